"""Generating Halton points exactly.

Every coordinate is an exact rational a / p**m; floating point only appears
when we choose to print decimals.
"""

from padiaphony import halton_stream, monna_inverse, validate_bases

bases = validate_bases([2, 3, 5])

print("First 10 points of the Halton sequence in bases (2, 3, 5):")
print(f"{'n':>3}  {'base 2':>8}  {'base 3':>8}  {'base 5':>8}")
for n, point in enumerate(halton_stream(10, bases)):
    cells = [f"{v.numerator}/{v.denominator}" for v in point.values()]
    print(f"{n:>3}  {cells[0]:>8}  {cells[1]:>8}  {cells[2]:>8}")

# Generation is a digit reversal, so it inverts exactly:
point = next(iter(halton_stream(1, bases, start=123456)))
print("\nReversing the digits of point 123456 recovers the index in every base:")
print([monna_inverse(c) for c in point.coords])

# Any prefix of length p**m in one dimension is a perfect uniform grid.
b2 = validate_bases([2])
grid = sorted(p.values()[0] for p in halton_stream(8, b2))
print("\nFirst 8 points in base 2, sorted:", [str(v) for v in grid])

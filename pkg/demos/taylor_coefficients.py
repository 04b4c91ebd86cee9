"""
Mixed partials of sin(x) e^(y^2)
================================

Build the tower once, then read any coefficient out of it.
"""

import math

from smooth_tower import exp, extract, extract_all_upto, sin, track, variable

# seed the two variables at the point (0.7, 0.4)
x = variable(0, 0.7, 2)
y = variable(1, 0.4, 2)
f = sin(x) * exp(y ** 2)
counter = track(f)

# d/dx d/dy by hand: cos(x) * 2y * e^(y^2)
print("f_xy  tower:", extract(f, (1, 1)))
print("f_xy  hand :", math.cos(0.7) * 0.8 * math.exp(0.16))

# every coefficient up to total degree 4, in graded-lex order
for idx, value in extract_all_upto(f, 4).items():
    print(idx, f"{value: .12f}")

# 15 coefficients of degree <= 4 cost exactly 15 computations
print("computations:", counter.computations)

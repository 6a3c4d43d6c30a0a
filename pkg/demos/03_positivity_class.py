"""The ODE positivity class, its boundary limits, and its integral test.

A coefficient q >= 0 on (0, 1) belongs to the class of order alpha when
the solution of y'' + q y = 0, y(0) = 0, y'(0) = 1 stays positive and
its boundary log-slope x y'(x)/y(x) approaches at least alpha as x -> 1.
"""

import numpy as np

from gftkit import QFunction, check_palpha, constant_solver, integral_criterion

# constant coefficients: the closed form is sin(sqrt(c) x)/sqrt(c), and the
# boundary limit sqrt(c) cot(sqrt(c)) sweeps from 1 down to -inf
print("constant coefficients")
for c in (0.0, 0.5, 1.0, 2.0, 4.0):
    v = check_palpha(QFunction.constant(c), 0.5)
    lim = v.limit_estimate
    print(f"  q = {c:<4}: positive={v.positive_on_01!s:<5} "
          f"limit={lim:+.6f}  member at 1/2: {v.member}")

# the solver inverts the limit map: which constant gives boundary slope t?
print("\ninverting the boundary limit")
for t in (0.25, 0.5, 0.75):
    c = constant_solver(t)
    v = check_palpha(QFunction.constant(c), t)
    print(f"  target {t}: c = {c:.12f}, recovered limit {v.limit_estimate:.9f}")

# integral criterion: a mass bound implies membership without solving
print("\nintegral criterion on assorted shapes")
for text in ("2*(1 - x)", "6*x*(1 - x)", "1.5*(1 - x^2)"):
    for scale in (0.3, 0.8):
        q = QFunction.from_expression(f"{scale}*({text})")
        rep = integral_criterion(q, 1.0 - scale)
        v = check_palpha(q, 1.0 - scale)
        print(f"  {scale}*({text}): integral {rep.integral:.4f}, "
              f"criterion {'ok' if rep.satisfied else 'silent'}, "
              f"solver says member={v.member}")

# the arctangent-weight family: integral (1-alpha)/2, membership (1+alpha)/2
print("\narctangent-weight family")
for a in (0.0, 0.4, 0.8):
    q = QFunction.from_expression(f"{(2 - 2*a)/np.pi!r}/(1 + x^2)")
    v = check_palpha(q, 0.5 * (1 + a))
    print(f"  alpha = {a}: member at {(1 + a)/2}: {v.member} "
          f"(limit {v.limit_estimate:.9f})")

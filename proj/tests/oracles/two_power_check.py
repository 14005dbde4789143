"""Symbolic expansion of the profile operator on A xi^-alpha - B xi^-beta.

Checks which cross-term coefficient multiplies A B xi^(-alpha-beta-2).
"""
import sympy as sp

xi, A, B, al, be, n, mu, ka = sp.symbols("xi A B alpha beta n mu kappa", positive=True)
psi = A * xi**-al - B * xi**-be
d1, d2 = sp.diff(psi, xi), sp.diff(psi, xi, 2)
op = (xi**2 + psi) * (d2 + (n - 1) / xi * d1) + 2 * ka * psi - (mu + ka) * xi * d1 - mu / 2 * d1**2
p = lambda x: x**2 - (n - 2 - mu - ka) * x + 2 * ka
c = lambda x: (mu - 2) / 2 * x**2 + (n - 2) * x
q_published = be * (be + 2 - n) - al * (al + 2 - n) + mu * al * be
q_direct = -be * (be + 2 - n) - al * (al + 2 - n) + mu * al * be
base = p(al) * A * xi**-al - p(be) * B * xi**-be - c(al) * A**2 * xi**(-2 * al - 2) - c(be) * B**2 * xi**(-2 * be - 2)
for name, q in [("published", q_published), ("direct", q_direct)]:
    diff = sp.simplify(sp.expand(op - base - q * A * B * xi**(-al - be - 2)))
    print(name, "residual:", diff)
vals = {n: 6, mu: sp.Rational(5, 2), al: sp.Rational(1, 2), ka: sp.Rational(1, 5)}
for bval in [sp.Rational(7, 10), sp.Rational(13, 20)]:
    print("beta", bval, "q_published", q_published.subs(vals).subs(be, bval), "q_direct", q_direct.subs(vals).subs(be, bval))

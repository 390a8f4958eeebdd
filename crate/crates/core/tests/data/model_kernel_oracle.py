# Mode sum for the round S^3 cross-section (n = 4), q = 2, kappa = 0.5,
# kappa' = 1, all positive roots up to 6, with mpmath at 40 digits.
# Also the ktilde moments by quadrature.
import mpmath as mp
from math import factorial

mp.mp.dps = 40
m, n, q = 3, 4, 2
c = mp.mpf(n) / 2 - q


def coexact(p, kmax=20):
    out = []
    for k in range(1, kmax + 1):
        ev = (k + p) * (k + m - p - 1)
        mult = (2 * k + m - 1) * factorial(k + m - 1) // (
            factorial(p) * factorial(m - p - 1) * factorial(k - 1) * (k + p) * (k + m - p - 1))
        out.append((ev, mult))
    return out


roots = {}


def add(v, mult):
    if 0 < v <= 6 + mp.mpf(10) ** -30:
        key = mp.nstr(v, 30)
        roots[key] = (v, roots.get(key, (v, 0))[1] + mult)


for ev, mult in coexact(2):  # I1
    r = mp.sqrt((c - 1) ** 2 + ev)
    add(r, mult)
    add(-r, mult)
for ev, mult in coexact(0):  # I2: exact(1) = coexact(0)
    r = mp.sqrt((c + 1) ** 2 + ev)
    add(r, mult)
for ev, mult in coexact(1):  # I3, I4: exact(2) = coexact(1)
    r = mp.sqrt(c ** 2 + ev)
    add(r - 1, mult)
    add(-(r - 1), mult)
    add(r + 1, mult)

a, b = mp.mpf("0.5"), mp.mpf(1)
total = mp.mpf(0)
for key in sorted(roots, key=lambda k: roots[k][0]):
    v, mult = roots[key]
    g = mp.besseli(v, a) * mp.besselk(v, b)
    total += mult * g
    print(f"nu={mp.nstr(v, 20)} rank={mult} g={mp.nstr(g, 20)}")
print("model_kernel", mp.nstr(total, 20))

for nu in [0.5, 1, 2, 3.5, 6]:
    nu = mp.mpf(nu)
    f = lambda t: t ** nu * mp.besselk(nu, t) / (mp.gamma(nu) * 2 ** (nu - 1))
    quad = mp.quad(f, [0, 1, 10, mp.inf])
    closed = mp.sqrt(mp.pi) * mp.gamma(nu + mp.mpf(1) / 2) / mp.gamma(nu)
    print("moment", nu, mp.nstr(quad, 20), mp.nstr(closed, 20))

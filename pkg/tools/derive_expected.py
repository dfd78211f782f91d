#!/usr/bin/env python3
"""Independent derivations behind the constants frozen into the test suite.

Every number asserted in tests/ with a "derived" comment was produced (or
cross-checked) by this script, using routes deliberately different from the
library code paths:

  * quotient-metric values come from an explicit rank-2 eigendecomposition,
    not the product formula;
  * harmonic-frame Lipschitz constants come from dense direct grids over the
    defining variational problems, not from the closed forms or the package
    optimizer;
  * the trigonometric closed forms used by the certified grid oracle are
    residual-checked against brute-force sums over their whole stated regime;
  * the (r, y) sphere reduction used by the d=2 oracle is validated against
    penalty-method optimization over raw complex vector pairs.

Run it from the repo root:  python tools/derive_expected.py
It prints a section per topic and a final OK/FAIL summary line.
"""

import numpy as np
from scipy import optimize

rng = np.random.default_rng(20240817)
failures = []


def check(label, ok, detail=""):
    status = "ok  " if ok else "FAIL"
    print(f"  [{status}] {label}" + (f"  ({detail})" if detail else ""))
    if not ok:
        failures.append(label)


def golden_min(f, a, b, tol=1e-13):
    """Golden-section minimum of a scalar function on [a, b]."""
    invphi = (np.sqrt(5.0) - 1.0) / 2.0
    x1 = b - invphi * (b - a)
    x2 = a + invphi * (b - a)
    f1, f2 = f(x1), f(x2)
    while b - a > tol:
        if f1 <= f2:
            b, x2, f2 = x2, x1, f1
            x1 = b - invphi * (b - a)
            f1 = f(x1)
        else:
            a, x1, f1 = x1, x2, f2
            x2 = a + invphi * (b - a)
            f2 = f(x2)
    return 0.5 * (a + b), min(f1, f2)


# ---------------------------------------------------------------------------
# 1. quotient metric: eigen route vs product formula
# ---------------------------------------------------------------------------

def dist_eigen(x, y):
    """Nuclear norm of x x* - y y* via an explicit eigendecomposition."""
    H = np.outer(x, x.conj()) - np.outer(y, y.conj())
    w = np.linalg.eigvalsh(H)
    return float(np.sum(np.abs(w)))


def dist_product(x, y):
    s = np.vdot(x, x).real + np.vdot(y, y).real
    c = abs(np.vdot(x, y))
    return float(np.sqrt(max(s * s - 4.0 * c * c, 0.0)))


print("== quotient metric ==")
x = np.array([1.0, 0.0])
y = np.array([1.0, 1.0]) / np.sqrt(2.0)
val = dist_eigen(x, y)
print(f"  dist(e1, diag) eigen route = {val!r}   sqrt(2) = {np.sqrt(2)!r}")
check("dist example equals sqrt(2)", abs(val - np.sqrt(2.0)) < 1e-14)

worst = 0.0
for _ in range(4000):
    d = int(rng.integers(2, 7))
    if rng.random() < 0.5:
        x = rng.standard_normal(d)
        y = rng.standard_normal(d)
    else:
        x = rng.standard_normal(d) + 1j * rng.standard_normal(d)
        y = rng.standard_normal(d) + 1j * rng.standard_normal(d)
    worst = max(worst, abs(dist_eigen(x, y) - dist_product(x, y)))
check("eigen route == product formula on 4000 random pairs",
      worst < 1e-10, f"max dev {worst:.3e}")


# ---------------------------------------------------------------------------
# 2. harmonic frame constants by dense direct search on the definitions
# ---------------------------------------------------------------------------

def harmonic_angles(m):
    return np.arange(m) * np.pi / m


def direct_lower(m, p, orthogonal=False):
    """min over unit u, v in R^2 of sum_j |<a_j,u><a_j,v>|^p, by grid + polish."""
    phi = harmonic_angles(m)
    n = 1400
    tu = np.linspace(0.0, np.pi, n, endpoint=False)
    tv = tu + np.pi / 2 if orthogonal else tu
    if orthogonal:
        vals = np.abs(np.cos(phi[None, :] - tu[:, None])
                      * np.cos(phi[None, :] - (tu + np.pi / 2)[:, None])) ** p
        F = vals.sum(axis=1)
        i = int(np.argmin(F))

        def f1(t):
            return float((np.abs(np.cos(phi - t) * np.cos(phi - t - np.pi / 2)) ** p).sum())

        t, fv = golden_min(f1, tu[i] - np.pi / n, tu[i] + np.pi / n)
        return fv ** (1.0 / p)
    cu = np.cos(phi[None, :] - tu[:, None])          # (n, m)
    F = (np.abs(cu[:, None, :] * cu[None, :, :]) ** p).sum(axis=2)
    i, j = np.unravel_index(np.argmin(F), F.shape)
    box = [tu[i], tu[j]]
    h = np.pi / n
    for _ in range(28):
        g0 = np.linspace(box[0] - h, box[0] + h, 9)
        g1 = np.linspace(box[1] - h, box[1] + h, 9)
        c0 = np.cos(phi[None, :] - g0[:, None])
        c1 = np.cos(phi[None, :] - g1[:, None])
        Fl = (np.abs(c0[:, None, :] * c1[None, :, :]) ** p).sum(axis=2)
        a, b = np.unravel_index(np.argmin(Fl), Fl.shape)
        box = [g0[a], g1[b]]
        h *= 0.35
    return float(Fl[a, b]) ** (1.0 / p)


def direct_upper(m, p):
    phi = harmonic_angles(m)
    n = 4000
    t = np.linspace(0.0, np.pi, n, endpoint=False)
    F = (np.abs(np.cos(phi[None, :] - t[:, None])) ** (2 * p)).sum(axis=1)
    i = int(np.argmax(F))

    def negf(s):
        return -float((np.abs(np.cos(phi - s)) ** (2 * p)).sum())

    s, fv = golden_min(negf, t[i] - np.pi / n, t[i] + np.pi / n)
    return (-fv) ** (1.0 / p)


def closed_forms(m, p):
    if p == 2:
        return np.sqrt(m / 8.0), np.sqrt(m / 8.0), np.sqrt(3.0 * m / 8.0)
    if m % 2 == 1:
        lo = np.cos(np.pi / (2 * m)) / (2.0 * np.tan(np.pi / (2 * m)))
        lo_orth = 1.0 / (2.0 * np.tan(np.pi / (2 * m)))
    else:
        lo = lo_orth = 1.0 / np.tan(np.pi / m)
    return lo, lo_orth, m / 2.0


print("== harmonic frame constants (direct grid vs closed form) ==")
worst_tbl = 0.0
for p in (1, 2):
    for m in range(3, 13):
        lo = direct_lower(m, p)
        lo_orth = direct_lower(m, p, orthogonal=True)
        up = direct_upper(m, p)
        clo, clo_orth, cup = closed_forms(m, p)
        dev = max(abs(lo - clo), abs(lo_orth - clo_orth), abs(up - cup))
        worst_tbl = max(worst_tbl, dev)
        if dev > 1e-9:
            print(f"  m={m} p={p}: L={lo!r} vs {clo!r}, "
                  f"M={lo_orth!r} vs {clo_orth!r}, U={up!r} vs {cup!r}")
check("closed forms match direct search, m=3..12, p=1,2",
      worst_tbl < 1e-9, f"max dev {worst_tbl:.3e}")
print(f"  spot literals: L(3,1)={direct_lower(3, 1)!r} (expect 0.75), "
      f"U(5,1)={direct_upper(5, 1)!r} (expect 2.5), "
      f"L(8,2)={direct_lower(8, 2)!r} (expect 1.0)")


# ---------------------------------------------------------------------------
# 3. fourth-moment flatness of the harmonic frames
# ---------------------------------------------------------------------------

print("== fourth-moment flatness ==")
tgrid = np.linspace(0.0, np.pi, 20011)
worst4 = 0.0
for m in range(3, 25):
    phi = harmonic_angles(m)
    q = (np.cos(phi[None, :] - tgrid[:, None]) ** 4).sum(axis=1)
    worst4 = max(worst4, float(np.ptp(q)), abs(float(q[0]) - 3.0 * m / 8.0))
check("sum cos^4 is constant 3m/8 for m=3..24", worst4 < 1e-12,
      f"max dev {worst4:.3e}")
q2 = tgrid[:: 200]
ident = np.cos(q2) ** 4 + np.sin(q2) ** 4
print(f"  2x2 identity fourth moment range = "
      f"[{ident.min():.6f}, {ident.max():.6f}]  (expect [0.5, 1.0])")
check("identity matrix is not a tight 4-frame",
      abs(ident.min() - 0.5) < 1e-6 and abs(ident.max() - 1.0) < 1e-6)


# ---------------------------------------------------------------------------
# 4. grid-oracle trigonometric closed forms, whole stated regime
# ---------------------------------------------------------------------------

def gk_direct(m, k, theta, phi):
    j = np.arange(1, m + 1)
    return float(np.abs(np.cos(j * np.pi / m - theta)
                        * np.sin(j * np.pi / m - phi - k * np.pi / m)).sum())


def gk_closed(m, k, theta, phi):
    s = np.sin(np.pi / m)
    if m % 2 == 0:
        return (np.cos(k * np.pi / m) * np.cos(np.pi / m - theta - phi) / s
                + k * np.sin(phi - theta + k * np.pi / m))
    if theta <= np.pi / (2 * m):
        return (np.cos(np.pi / (2 * m) + k * np.pi / m)
                * np.cos(np.pi / (2 * m) - theta - phi) / s
                + (2 * k + 1) / 2.0 * np.sin(phi - theta + k * np.pi / m))
    return (np.cos(np.pi / (2 * m) - k * np.pi / m)
            * np.cos(3 * np.pi / (2 * m) - theta - phi) / s
            + (2 * k - 1) / 2.0 * np.sin(phi - theta + k * np.pi / m))


def k_hat(m, phi):
    if m % 2 == 0:
        return (m - 2) // 2
    return (m - 1) // 2 if phi <= np.pi / (2 * m) else (m - 3) // 2


print("== angle-sum closed forms ==")
worst_gk = 0.0
for m in range(3, 17):
    grid = np.linspace(0.0, np.pi / m, 33)
    for th in grid:
        for ph in grid:
            for k in range(k_hat(m, ph) + 1):
                worst_gk = max(worst_gk,
                               abs(gk_direct(m, k, th, ph) - gk_closed(m, k, th, ph)))
check("G_k closed form residual over full regime", worst_gk < 1e-12,
      f"max residual {worst_gk:.3e}")

worst_lg = 0.0
for _ in range(1500):
    m = int(rng.integers(1, 65))
    th = rng.uniform(0.02, 2 * np.pi - 0.02)
    j = np.arange(1, m + 1)
    r1 = abs(np.cos(j * th).sum()
             - (np.sin((2 * m + 1) * th / 2) / (2 * np.sin(th / 2)) - 0.5))
    r2 = abs(np.sin(j * th).sum()
             - np.sin((m + 1) * th / 2) * np.sin(m * th / 2) / np.sin(th / 2))
    worst_lg = max(worst_lg, r1, r2)
    # the equispaced cosine sums vanish only once the spacing avoids full
    # turns: the 2j sum needs m >= 2, the 4j sum needs m >= 3 (m=2 leaves
    # 2*cos(4*theta) behind)
    if m >= 2:
        t2 = rng.uniform(0, np.pi)
        worst_lg = max(worst_lg, abs(np.cos(2 * j * np.pi / m - 2 * t2).sum()))
        if m >= 3:
            worst_lg = max(worst_lg, abs(np.cos(4 * j * np.pi / m - 4 * t2).sum()))
check("partial cosine/sine sum identities, random m<=64", worst_lg < 1e-10,
      f"max residual {worst_lg:.3e}")


# ---------------------------------------------------------------------------
# 5. the (r, y) sphere reduction at d=2 vs raw-pair optimization
# ---------------------------------------------------------------------------

def bloch(rows):
    """Per-row weight kappa_i = |a_i|^2/2 and unit coordinate vector m_i.

    m_i are the Pauli coordinates of the rank-one projector a_i a_i^*
    (a global reflection of all m_i leaves every minimum below unchanged).
    """
    t2 = (np.abs(rows) ** 2).sum(axis=1)
    kap = t2 / 2.0
    mx = (np.abs(rows[:, 0]) ** 2 - np.abs(rows[:, 1]) ** 2) / t2
    cross = 2.0 * rows[:, 0] * rows[:, 1].conj() / t2
    return kap, np.stack([mx, cross.real, cross.imag], axis=1)


def reduced_lower(rows, p, orthogonal=False):
    """min over r in [0,1], y in S^2 of sum_i kappa_i^p |r + <m_i, y>|^p."""
    kap, M = bloch(rows)
    nr, nt, ng = (1, 241, 481) if orthogonal else (121, 161, 321)
    rr = np.array([0.0]) if orthogonal else np.linspace(0, 1, nr)
    th = np.linspace(0, np.pi, nt)
    gg = np.linspace(0, 2 * np.pi, ng, endpoint=False)
    Y = np.stack([np.repeat(np.cos(th), ng),
                  np.repeat(np.sin(th), ng) * np.tile(np.cos(gg), nt),
                  np.repeat(np.sin(th), ng) * np.tile(np.sin(gg), nt)], axis=1)
    inner = Y @ M.T                                    # (nt*ng, m)
    best = np.inf
    arg = None
    for r in rr:
        F = ((kap[None, :] ** p) * np.abs(r + inner) ** p).sum(axis=1)
        i = int(np.argmin(F))
        if F[i] < best:
            best, arg = float(F[i]), (r, Y[i])

    def fobj(z):
        r = 0.0 if orthogonal else np.clip(z[0], 0.0, 1.0)
        y = z[1:4] / np.linalg.norm(z[1:4])
        return ((kap ** p) * np.abs(r + y @ M.T) ** p).sum()

    z0 = np.concatenate([[arg[0]], arg[1]])
    res = optimize.minimize(fobj, z0, method="Nelder-Mead",
                            options={"xatol": 1e-12, "fatol": 1e-14,
                                     "maxiter": 4000})
    if res.fun < best:
        best = float(res.fun)
        r = 0.0 if orthogonal else float(np.clip(res.x[0], 0.0, 1.0))
        arg = (r, res.x[1:4] / np.linalg.norm(res.x[1:4]))
    return best ** (1.0 / p), arg[0], np.asarray(arg[1], float)


def pair_from_reduced(r, y):
    """Rebuild a unit pair (u, v) from a reduced point (r, y).

    The point encodes v u^* = (r/2) I + (y/2 + i beta) . sigma' in the same
    coordinate frame bloch() uses (sigma' = (sigma_z, sigma_x, -sigma_y));
    beta is any vector orthogonal to y with |beta|^2 = (1 - r^2)/4.  The
    matrix then has determinant zero and unit Frobenius norm, so an SVD
    factorizes it back into unit vectors with <u, v> = r.
    """
    y = np.asarray(y, float)
    probe = np.array([1.0, 0, 0]) if abs(y[0]) < 0.9 else np.array([0.0, 1, 0])
    b = np.cross(y, probe)
    b /= np.linalg.norm(b)
    c = y / 2.0 + 0.5j * np.sqrt(max(1.0 - r * r, 0.0)) * b
    sz = np.array([[1, 0], [0, -1]], dtype=complex)
    sx = np.array([[0, 1], [1, 0]], dtype=complex)
    sy = np.array([[0, -1j], [1j, 0]])
    M = (r / 2.0) * np.eye(2) + c[0] * sz + c[1] * sx - c[2] * sy
    W, s, Vh = np.linalg.svd(M)
    assert abs(s[0] - 1.0) < 1e-12 and s[1] < 1e-12, s
    return Vh[0].conj(), W[:, 0]


def eval_raw(rows, u, v, p):
    """Raw objective at a given pair, measurement convention <a_j, x>."""
    yu = rows.conj() @ u
    yv = rows.conj() @ v
    return float((np.abs((yu.conj() * yv).real) ** p).sum() ** (1.0 / p))


def raw_lower(rows, p, orthogonal=False, starts=50):
    """Same infimum from raw complex pairs with penalty constraints.

    The rows are the measurement vectors a_j; the measurement of x is
    <a_j, x> = sum_k conj(a_jk) x_k and the objective term is
    Re(conj(<a,u>) <a,v>).
    """
    conj_rows = rows.conj()

    def fobj(z):
        u = z[0:2] + 1j * z[2:4]
        v = z[4:6] + 1j * z[6:8]
        u = u / np.linalg.norm(u)
        v = v / np.linalg.norm(v)
        ip = np.vdot(u, v)
        pen = ip.imag ** 2 + (ip.real ** 2 if orthogonal else 0.0)
        yu = conj_rows @ u
        yv = conj_rows @ v
        g = (yu.conj() * yv).real
        return (np.abs(g) ** p).sum() + 1e7 * pen

    best = np.inf
    for _ in range(starts):
        z0 = rng.standard_normal(8)
        res = optimize.minimize(fobj, z0, method="Powell",
                                options={"xtol": 1e-11, "ftol": 1e-13,
                                         "maxiter": 4000})
        if res.fun < best:
            best = float(res.fun)
    return best ** (1.0 / p)


print("== d=2 complex reduction vs raw-pair optimization ==")
gap_seen = 0.0
for trial in range(4):
    m = int(rng.integers(5, 9))
    rows = (rng.standard_normal((m, 2)) + 1j * rng.standard_normal((m, 2))) / np.sqrt(2)
    print(f"  trial {trial} rows = {rows.tolist()!r}")
    for p in (1, 2):
        red, rw, yw = reduced_lower(rows, p)
        raw = raw_lower(rows, p)
        orth, _, yo = reduced_lower(rows, p, orthogonal=True)
        u, v = pair_from_reduced(rw, yw)
        rec = eval_raw(rows, u, v, p)
        check(f"trial {trial} p={p}: witness pair attains reduced value",
              abs(rec - red) < 1e-7,
              f"reduced {red:.8f} witness {rec:.8f} <u,v>={np.vdot(u, v):.2e}")
        check(f"trial {trial} p={p}: raw search cannot beat reduced minimum",
              raw >= red - 2e-5, f"reduced {red:.8f} raw {raw:.8f}")
        if raw - red > 1e-4:
            print(f"         note: raw Powell stopped {raw - red:.2e} above "
                  "the witnessed minimum (kinky landscape)")
        uo, vo = pair_from_reduced(0.0, yo)
        reco = eval_raw(rows, uo, vo, p)
        check(f"trial {trial} p={p}: orthogonal witness attains value",
              abs(reco - orth) < 1e-7 and abs(np.vdot(uo, vo)) < 1e-9,
              f"orth {orth:.8f} witness {reco:.8f} |<u,v>|={abs(np.vdot(uo, vo)):.1e}")
        check(f"trial {trial} p={p}: unrestricted <= orthogonal",
              red <= orth + 1e-9, f"gap {orth - red:.3e}")
        gap_seen = max(gap_seen, orth - red)
print(f"  largest orthogonal-vs-unrestricted gap observed: {gap_seen:.4f}")
check("complex matrices do show a strict gap generically", gap_seen > 1e-3)


# ---------------------------------------------------------------------------
# 6. expectation curves for Gaussian rows
# ---------------------------------------------------------------------------

print("== Gaussian expectation curves ==")
N = 2_000_000
for field in ("real", "complex"):
    worst_z = 0.0
    for th in (0.0, np.pi / 8, np.pi / 4, 3 * np.pi / 8, np.pi / 2):
        if field == "real":
            a = rng.standard_normal((N, 2))
            s = np.abs(np.cos(th) * a[:, 0] ** 2 + np.sin(th) * a[:, 0] * a[:, 1])
            ref = (2 / np.pi) * (np.sin(th) + (np.pi / 2 - th) * np.cos(th))
        else:
            a = (rng.standard_normal((N, 2)) + 1j * rng.standard_normal((N, 2))) / np.sqrt(2)
            s = np.abs(np.cos(th) * np.abs(a[:, 0]) ** 2
                       + np.sin(th) * (a[:, 0].conj() * a[:, 1]).real)
            ref = (3.0 + np.cos(2 * th)) / 4.0
        z = abs(s.mean() - ref) / (s.std(ddof=1) / np.sqrt(N))
        worst_z = max(worst_z, z)
    check(f"{field} curve matches MC within 4 sigma", worst_z < 4.0,
          f"worst z {worst_z:.2f}")


# ---------------------------------------------------------------------------
# 7. rational-function minimization claim and the sine-sum bound
# ---------------------------------------------------------------------------

print("== auxiliary inequalities ==")
worst_g = 0.0
worst_fd = 0.0
for _ in range(100):
    m = int(rng.integers(3, 13))
    phi = harmonic_angles(m)
    rows = np.stack([np.cos(phi), np.sin(phi)], axis=1)
    ang = rng.uniform(0, np.pi)
    Q = np.array([[np.cos(ang), -np.sin(ang)], [np.sin(ang), np.cos(ang)]])
    rows = rows @ Q
    th = rng.uniform(0, np.pi)
    xv = np.array([np.cos(th), np.sin(th)])
    yv = np.array([-np.sin(th), np.cos(th)])
    al = (rows @ xv) ** 2
    ga = (rows @ yv) ** 2

    def g(t):
        return float((((al * t - ga) ** 2) / (t + 1.0) ** 2).sum())

    ts = np.linspace(0.0, 6.0, 1201)
    gv = np.array([g(t) for t in ts])
    worst_g = max(worst_g, g(1.0) - gv.min())
    worst_fd = max(worst_fd, abs(g(1.0 + 1e-4) - g(1.0 - 1e-4)) / 2e-4)
check("g attains its minimum at t=1 on 100 rotated harmonic instances",
      worst_g < 1e-12, f"max g(1)-min {worst_g:.3e}")
check("central difference g'(1) vanishes", worst_fd < 1e-8,
      f"max |fd| {worst_fd:.3e}")

worst_sub = -np.inf
ts = np.linspace(0, np.pi, 2048)
for _ in range(2000):
    m = int(rng.integers(1, 17))
    phis = np.sort(rng.uniform(0, np.pi, m))
    t2 = rng.uniform(0.2, 3.0, m)

    def h(t):
        return float((t2 * np.abs(np.sin(t - phis))).sum())

    hv = (t2[None, :] * np.abs(np.sin(ts[:, None] - phis[None, :]))).sum(axis=1)
    i = int(np.argmin(hv))
    _, hmin = golden_min(h, ts[max(i - 1, 0)], ts[min(i + 1, 2047)])
    hmin = min(hmin, float(hv[i]))
    bound = t2.sum() / (m * np.tan(np.pi / (2 * m))) if m > 1 else 0.0
    worst_sub = max(worst_sub, hmin - bound)
check("weighted |sin| minimum stays below tan bound, 2000 instances",
      worst_sub < 1e-10, f"max excess {worst_sub:.3e}")

phis = harmonic_angles(3)
hmin = min(golden_min(lambda t: float(np.abs(np.sin(t - phis)).sum()), 0, np.pi)[1],
           *(float(np.abs(np.sin(t - phis)).sum()) for t in np.linspace(0, np.pi, 999)))
print(f"  equispaced m=3 unit weights: min {hmin!r} vs bound "
      f"{3.0 / (3.0 * np.tan(np.pi / 6))!r} (equality case, sqrt(3))")


# ---------------------------------------------------------------------------
# 8. literals for the documented worked examples
# ---------------------------------------------------------------------------

print("== direct literals ==")
print(f"  (3*48)^(1/4) + sqrt(2) + 0 = {(3 * 48) ** 0.25 + np.sqrt(2.0)!r}")
print(f"  (3*3)^(1/4) + 1 + 1       = {(3 * 3) ** 0.25 + 2.0!r}")
print(f"  sub-tan rhs (1,1,1)       = {3.0 / (3.0 * np.tan(np.pi / 6))!r}")
print(f"  sub-tan rhs (2,2,2,2)     = {8.0 / (4.0 * np.tan(np.pi / 8))!r}")
print(f"  harmonic m=3 row angles   = {np.cos(harmonic_angles(3))!r} / "
      f"{np.sin(harmonic_angles(3))!r}")
print(f"  beta floor m*tan(pi/2m), m=10^4: "
      f"{1e4 * np.tan(np.pi / 2e4) / np.cos(np.pi / 2e4) - np.pi / 2!r}")

print()
if failures:
    print("FAILURES:", failures)
else:
    print("all derivations OK")

"""Protocol-parameter optimization: closed-form maxima and a grid oracle.

Two objectives over the five protocol angles (mu, nu, xi, eta, theta):

* ``extracted``        the total energy removed by the feedback step;
* ``site_reduction``   the reduction of Bob's site term alone.

Both have closed-form maxima

    max extracted      = sqrt(e_B^2 + (h yy)^2) - |e_B|,
    max site_reduction = sqrt(e_B^2 + (h xx)^2) - |e_B|,

attained at measurement/feedback axes (y, x) and (x, y) respectively, with
the rotation angle fixed by the ratio of the correlator gain to the site
energy.  :func:`brute_force_max` cross-checks these against an exhaustive
scan of the direct matrix-element objective; it never touches the closed
forms, so agreement is a genuine two-route test.

For fixed axes the direct objective is an exact sinusoid in 2 theta
(conjugation by cos(theta) + i n sin(theta) s.sigma_B produces no higher
harmonics), so three direct evaluations determine the whole theta
dependence.  The scan therefore maximises theta exactly within every axis
cell instead of enumerating a theta grid: the positive basin in theta
narrows like the maximum itself and falls below any fixed grid spacing
once the edge field is large, where a literal theta grid would see only
non-positive values.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import operators as ops
from .model import (GroundState, ModelParams, build_hamiltonian,
                    energy_decomposition, ground_state)
from .protocol import (ProtocolParams, correlators_closed,
                       measurement_energy_closed, run_protocol)

TARGET_EXTRACTED = "extracted"
TARGET_SITE = "site_reduction"
_TARGETS = (TARGET_EXTRACTED, TARGET_SITE)

MIN_RESOLUTION = 64


@dataclass(frozen=True)
class Certificate:
    """Location and value of an optimum, plus its sinusoid decomposition.

    At the optimal axes the objective as a function of the rotation angle is

        value(theta) = sqrt(W^2 + X^2) cos(2 theta + phase) - |W|

    with W = `amplitude`, X = `cross_amplitude`, and the optimum at
    2 theta = -phase.  `bond_reduction` is the bond-term energy change at
    the reported parameters (zero when the extracted energy is maximised,
    strictly negative at the site-reduction optimum for h > 0).
    """

    target: str
    params: ProtocolParams
    value: float
    amplitude: float
    cross_amplitude: float
    phase: float
    sin_2theta: float
    cos_2theta: float
    bond_reduction: float


def max_extracted_energy(state: GroundState) -> Certificate:
    """Closed-form maximum of the extracted energy.

    Optimal axes: measurement along y, feedback along x.  At h = 0 the
    maximum is zero and theta is not unique; theta = 0 is reported.
    """
    h = state.params.h
    e = energy_decomposition(state)
    c = correlators_closed(state)
    gain = h * c.yy
    root = np.hypot(e.site_b, gain)
    value = root - abs(e.site_b)
    if root > 0.0:
        sin2, cos2 = gain / root, -e.site_b / root
    else:
        sin2, cos2 = 0.0, 1.0
    theta = 0.5 * np.arctan2(sin2, cos2)
    pp = ProtocolParams.from_vectors((0.0, 1.0, 0.0), (1.0, 0.0, 0.0), theta)
    amplitude = e.site_b
    cross = gain
    phase = np.arctan2(-cross, -amplitude) if root > 0.0 else 0.0
    return Certificate(target=TARGET_EXTRACTED, params=pp, value=value,
                       amplitude=amplitude, cross_amplitude=cross, phase=phase,
                       sin_2theta=sin2, cos_2theta=cos2, bond_reduction=0.0)


def max_site_reduction(state: GroundState) -> Certificate:
    """Closed-form maximum of Bob's site-energy reduction.

    Optimal axes: measurement along x, feedback along y.  The accompanying
    bond term e_R (1 - cos 2 theta) + k xxz sin 2 theta is negative for
    every h > 0, so this optimum always releases heat.
    """
    h, k = state.params.h, state.params.k
    e = energy_decomposition(state)
    c = correlators_closed(state)
    gain = h * c.xx
    root = np.hypot(e.site_b, gain)
    value = root - abs(e.site_b)
    if root > 0.0:
        sin2, cos2 = -gain / root, -e.site_b / root
    else:
        sin2, cos2 = 0.0, 1.0
    theta = 0.5 * np.arctan2(sin2, cos2)
    pp = ProtocolParams.from_vectors((1.0, 0.0, 0.0), (0.0, 1.0, 0.0), theta)
    bond = e.bond_right * (1.0 - cos2) + k * c.xxz * sin2
    amplitude = e.site_b
    cross = -gain
    phase = np.arctan2(-cross, -amplitude) if root > 0.0 else 0.0
    return Certificate(target=TARGET_SITE, params=pp, value=value,
                       amplitude=amplitude, cross_amplitude=cross, phase=phase,
                       sin_2theta=sin2, cos_2theta=cos2, bond_reduction=bond)


# ---------------------------------------------------------------------------
# direct (matrix-element) objective and the grid oracle


def direct_objective(state: GroundState, target: str):
    """Pointwise objective f(mu, nu, xi, eta, theta) by matrix algebra.

    Same matrix elements as :func:`qetsim.protocol.run_protocol`, organised
    as matrix-vector products with the static operators hoisted out so the
    refinement loop can afford tens of thousands of evaluations.
    """
    if target not in _TARGETS:
        raise ValueError(f"unknown target {target!r}")
    terms = build_hamiltonian(state.params)
    H = terms.total
    v = state.vector
    sig_a_v = [ops.pauli(ops.SITE_A, ax) @ v for ax in "xyz"]
    sig_b = [ops.pauli(ops.SITE_B, ax) for ax in "xyz"]
    sig_b_v = [m @ v for m in sig_b]
    site_b_energy = energy_decomposition(state).site_b
    site_b_diag = np.diag(terms.site_b).copy()   # the site term is diagonal

    def axes(mu, nu, xi, eta):
        r = ops.axis_vector(mu, nu)
        s = ops.axis_vector(xi, eta)
        return r, s

    if target == TARGET_EXTRACTED:
        def f(mu, nu, xi, eta, theta):
            r, s = axes(mu, nu, xi, eta)
            cos_t, sin_t = np.cos(theta), np.sin(theta)
            rv = r[0] * sig_a_v[0] + r[1] * sig_a_v[1] + r[2] * sig_a_v[2]
            total = 0.0
            for n in (1.0, -1.0):
                pv = 0.5 * (v + n * rv)
                spv = s[0] * (sig_b[0] @ pv) + s[1] * (sig_b[1] @ pv) \
                    + s[2] * (sig_b[2] @ pv)
                uv = cos_t * pv + 1j * n * sin_t * spv
                total += (np.vdot(pv, H @ pv) - np.vdot(uv, H @ uv)).real
            return total
    else:
        def f(mu, nu, xi, eta, theta):
            r, s = axes(mu, nu, xi, eta)
            cos_t, sin_t = np.cos(theta), np.sin(theta)
            rv = r[0] * sig_a_v[0] + r[1] * sig_a_v[1] + r[2] * sig_a_v[2]
            sv = s[0] * sig_b_v[0] + s[1] * sig_b_v[1] + s[2] * sig_b_v[2]
            total = site_b_energy
            for n in (1.0, -1.0):
                pv = 0.5 * (v + n * rv)
                uv = cos_t * v + 1j * n * sin_t * sv
                y = site_b_diag * uv
                sy = s[0] * (sig_b[0] @ y) + s[1] * (sig_b[1] @ y) \
                    + s[2] * (sig_b[2] @ y)
                back = cos_t * y - 1j * n * sin_t * sy
                total -= np.vdot(pv, back).real
            return total
    return f


def theta_sinusoid(f, mu, nu, xi, eta):
    """Coefficients (a, b, c) of f(theta) = a + b cos 2 theta + c sin 2 theta
    from direct evaluations at theta = 0 and +-pi/4."""
    f0 = f(mu, nu, xi, eta, 0.0)
    fp = f(mu, nu, xi, eta, np.pi / 4.0)
    fm = f(mu, nu, xi, eta, -np.pi / 4.0)
    a = 0.5 * (fp + fm)
    c = 0.5 * (fp - fm)
    b = f0 - a
    return a, b, c


_GRID_CACHE = {}


def _grids(resolution):
    if resolution in _GRID_CACHE:
        return _GRID_CACHE[resolution]
    n = resolution
    mus = np.linspace(0.0, np.pi, n)
    nus = np.linspace(0.0, 2.0 * np.pi, n, endpoint=False)
    xis = np.linspace(0.0, np.pi, n)
    etas = np.linspace(0.0, 2.0 * np.pi, n, endpoint=False)
    MU, NU = np.meshgrid(mus, nus, indexing="ij")
    raxes = np.stack([(np.sin(MU) * np.cos(NU)).ravel(),
                      (np.sin(MU) * np.sin(NU)).ravel(),
                      np.cos(MU).ravel()], axis=1)
    XI, ETA = np.meshgrid(xis, etas, indexing="ij")
    saxes = np.stack([(np.sin(XI) * np.cos(ETA)).ravel(),
                      (np.sin(XI) * np.sin(ETA)).ravel(),
                      np.cos(XI).ravel()], axis=1)
    spairs = np.einsum("na,nb->nab", saxes, saxes).reshape(-1, 9)
    cache = {
        "axes1d": (mus, nus, xis, etas),
        "raxes": raxes,
        "saxes": saxes,
        "spairs": spairs,
    }
    _GRID_CACHE[resolution] = cache
    return cache


def _scan_tensors(state: GroundState, target: str):
    """Coupling tensors that turn the direct objective into contractions.

    The post-measurement states P_A(n)|psi> are linear in (1, n r); the
    rotation is linear in (cos t, i n sin t s).  Sandwiching the relevant
    Hamiltonian term therefore reduces, per grid point, to a bilinear
    contraction of precomputed matrix elements of raw operators.
    """
    v = state.vector
    terms = build_hamiltonian(state.params)
    H = terms.total
    sig_a = [ops.pauli(ops.SITE_A, ax) for ax in "xyz"]
    sig_b = [ops.pauli(ops.SITE_B, ax) for ax in "xyz"]
    phi = np.stack([v] + [sa @ v for sa in sig_a], axis=1) / 2.0   # (16, 4)
    rot = [ops.IDENTITY] + sig_b
    if target == TARGET_EXTRACTED:
        bp = np.stack([B @ phi for B in rot], axis=0)              # (4, 16, 4)
        g4 = np.einsum("pdi,de,qej->piqj", bp.conj(), H, bp)
        k_meas = phi.conj().T @ H @ phi
        return {"g4": g4, "k_meas": k_meas}
    # rotated site term applied to |psi>: rows (p, q), the rot factors are
    # Hermitian so no conjugation is needed on the left one
    rotated = np.stack([[bp @ terms.site_b @ bq @ v for bq in rot]
                        for bp in rot], axis=0)                    # (4, 4, 16)
    g3 = np.einsum("di,pqd->ipq", phi.conj(), rotated)
    return {"g3": g3, "offset": energy_decomposition(state).site_b}


def _scan_grid(state: GroundState, target: str, resolution, chunk=512):
    """Exhaustive scan over the axis grid with theta maximised exactly.

    Returns (best value, best axis-angle tuple).  Ties resolve to the
    lexicographically first grid cell in (mu, nu, xi, eta) order.
    """
    grids = _grids(resolution)
    mus, nus, xis, etas = grids["axes1d"]
    raxes, saxes, spairs = grids["raxes"], grids["saxes"], grids["spairs"]
    n = resolution
    n_w = raxes.shape[0]
    tensors = _scan_tensors(state, target)
    wp = np.concatenate([np.ones((n_w, 1)), raxes], axis=1)
    wm = np.concatenate([np.ones((n_w, 1)), -raxes], axis=1)
    if target == TARGET_EXTRACTED:
        k_meas = tensors["k_meas"]
        offset = (np.einsum("wi,ij,wj->w", wp, k_meas, wp)
                  + np.einsum("wi,ij,wj->w", wm, k_meas, wm)).real
        g4 = tensors["g4"]

        def t_combined(sel):
            tp = np.einsum("piqj,wi,wj->pqw", g4, wp[sel], wp[sel])
            tm = np.einsum("piqj,wi,wj->pqw", g4, wm[sel], wm[sel])
            return tp + tm.conj()
    else:
        offset = np.full(n_w, tensors["offset"])
        g3 = tensors["g3"]

        def t_combined(sel):
            tp = np.einsum("wi,ipq->pqw", wp[sel], g3)
            tm = np.einsum("wi,ipq->pqw", wm[sel], g3)
            return tp + tm.conj()

    best_val = np.empty(n_w)
    best_s = np.empty(n_w, dtype=np.int64)
    for lo in range(0, n_w, chunk):
        sel = slice(lo, min(lo + chunk, n_w))
        tc = t_combined(sel)                       # (4, 4, c)
        t00 = tc[0, 0].real                        # value at theta = 0
        dvec = -(tc[0, 1:] - tc[1:, 0]).imag       # (3, c)
        quad = tc[1:, 1:].reshape(9, -1).real      # (9, c)
        # a + b cos(2t) + c sin(2t); exact minimum over theta is a - R
        a = 0.5 * (t00[None, :] + spairs @ quad)
        b = t00[None, :] - a
        c = 0.5 * (saxes @ dvec)
        gain = offset[sel][None, :] - (a - np.hypot(b, c))
        s_idx = gain.argmax(axis=0)
        cols = np.arange(gain.shape[1])
        best_val[sel] = gain[s_idx, cols]
        best_s[sel] = s_idx
    w_idx = int(best_val.argmax())
    s_idx = int(best_s[w_idx])
    angles = (mus[w_idx // n], nus[w_idx % n], xis[s_idx // n], etas[s_idx % n])
    return float(best_val[w_idx]), angles


def _golden_section(g, lo, hi, tol=1e-12):
    """Golden-section minimiser of g on [lo, hi]; returns (x, g(x))."""
    invphi = (np.sqrt(5.0) - 1.0) / 2.0
    x1 = hi - invphi * (hi - lo)
    x2 = lo + invphi * (hi - lo)
    g1, g2 = g(x1), g(x2)
    while hi - lo > tol:
        if g1 <= g2:
            hi, x2, g2 = x2, x1, g1
            x1 = hi - invphi * (hi - lo)
            g1 = g(x1)
        else:
            lo, x1, g1 = x1, x2, g2
            x2 = lo + invphi * (hi - lo)
            g2 = g(x2)
    xm = 0.5 * (lo + hi)
    return xm, g(xm)


def _refine(f, axis_angles, steps, tol=1e-12, max_rounds=80):
    """Cyclic golden-section ascent over the four axis angles.

    The rotation angle is maximised exactly at every probe through the
    three-point sinusoid reconstruction, which removes the curved ridge
    that couples the feedback tilt to the rotation angle.  Brackets shrink
    once a full cycle stops improving; the search ends when a cycle gains
    less than `tol`.
    """
    clamp = {0: (0.0, np.pi), 2: (0.0, np.pi)}  # polar angles

    def envelope(axes):
        a, b, c = theta_sinusoid(f, *axes)
        return a + np.hypot(b, c)

    x = list(axis_angles)
    value = envelope(x)
    deltas = list(steps)
    for _ in range(max_rounds):
        previous = value
        for i in range(4):
            lo, hi = x[i] - deltas[i], x[i] + deltas[i]
            if i in clamp:
                lo, hi = max(lo, clamp[i][0]), min(hi, clamp[i][1])

            def section(t, i=i):
                trial = list(x)
                trial[i] = t
                return -envelope(trial)

            best_t, neg = _golden_section(section, lo, hi, tol=1e-11)
            if -neg > value:
                x[i], value = best_t, -neg
        if value - previous < tol:
            if max(deltas) < 1e-7:
                break
            deltas = [d * 0.25 for d in deltas]
    _, b, c = theta_sinusoid(f, *x)
    theta = 0.5 * np.arctan2(c, b)
    return f(*x, theta), (*x, theta)


def _normalize_angles(angles):
    mu, nu, xi, eta, theta = angles
    nu %= 2.0 * np.pi
    eta %= 2.0 * np.pi
    two_theta = np.arctan2(np.sin(2.0 * theta), np.cos(2.0 * theta))
    return mu, nu, xi, eta, 0.5 * two_theta


def brute_force_max(state: GroundState, target: str,
                    resolution: int = MIN_RESOLUTION) -> Certificate:
    """Grid scan plus local refinement of the direct objective.

    `resolution` is the number of points per angle (at least 64).  The
    certificate's sinusoid fields come from direct evaluations at the
    optimal axes, keeping the whole oracle independent of the closed forms.
    """
    if target not in _TARGETS:
        raise ValueError(f"unknown target {target!r}")
    if resolution < MIN_RESOLUTION:
        raise ValueError(f"resolution must be at least {MIN_RESOLUTION}")
    f = direct_objective(state, target)
    _, axis_angles = _scan_grid(state, target, resolution)
    steps = (np.pi / resolution, 2.0 * np.pi / resolution,
             np.pi / resolution, 2.0 * np.pi / resolution)
    value, angles = _refine(f, axis_angles, steps)
    mu, nu, xi, eta, theta = _normalize_angles(angles)
    a, b, c = theta_sinusoid(f, mu, nu, xi, eta)
    amplitude, cross = a, c
    root = np.hypot(amplitude, cross)
    phase = np.arctan2(-cross, -amplitude) if root > 0.0 else 0.0
    pp = ProtocolParams(mu, nu, xi, eta, theta)
    bond = run_protocol(state, pp).extracted_bond
    return Certificate(target=target, params=pp, value=value,
                       amplitude=amplitude, cross_amplitude=cross, phase=phase,
                       sin_2theta=np.sin(2.0 * theta),
                       cos_2theta=np.cos(2.0 * theta), bond_reduction=bond)


# ---------------------------------------------------------------------------
# sweeps and landmark extraction


@dataclass(frozen=True)
class SweepRow:
    """One row of the protocol sweep over the edge field."""

    h: float
    xx: float
    yy: float
    h_xx: float
    h_yy: float
    injected_axis_y: float
    injected_axis_x: float
    extracted_max: float
    site_reduction_max: float
    net_at_site_optimum: float


def injected_energy(state: GroundState, axis: str) -> float:
    """Measurement cost for an axis-aligned measurement ('x', 'y' or 'z')."""
    vec = {"x": (1.0, 0.0, 0.0), "y": (0.0, 1.0, 0.0), "z": (0.0, 0.0, 1.0)}[axis]
    pp = ProtocolParams.from_vectors(vec, (0.0, 0.0, 1.0), 0.0)
    return measurement_energy_closed(state, pp)[1]


def protocol_sweep(h_values, k: float = 1.0):
    """Correlators, measurement costs and both maxima per edge field."""
    rows = []
    for h in h_values:
        state = ground_state(ModelParams(h=float(h), k=k))
        c = correlators_closed(state)
        ext = max_extracted_energy(state)
        site = max_site_reduction(state)
        rows.append(SweepRow(
            h=float(h), xx=c.xx, yy=c.yy, h_xx=float(h) * c.xx,
            h_yy=float(h) * c.yy,
            injected_axis_y=injected_energy(state, "y"),
            injected_axis_x=injected_energy(state, "x"),
            extracted_max=ext.value,
            site_reduction_max=site.value,
            net_at_site_optimum=site.value + site.bond_reduction,
        ))
    return rows


@dataclass(frozen=True)
class PeakEstimate:
    h_peak: float
    value: float
    ratio_to_injected: float


def _closed_values(h, k):
    return ground_state(ModelParams(h=float(h), k=k))


def peak_extracted_energy(k: float = 1.0, spacing: float = 0.005) -> PeakEstimate:
    """Peak of the extracted-energy maximum over h, by quadratic
    interpolation around the best point of a uniform grid."""
    hs = np.arange(spacing, 1.0 + spacing / 2.0, spacing) * k
    vals = np.array([max_extracted_energy(_closed_values(h, k)).value for h in hs])
    i = int(vals.argmax())
    i = min(max(i, 1), len(hs) - 2)
    y0, y1, y2 = vals[i - 1:i + 2]
    denom = y0 - 2.0 * y1 + y2
    shift = 0.5 * (y0 - y2) / denom if denom != 0.0 else 0.0
    h_peak = hs[i] + shift * spacing * k
    state = _closed_values(h_peak, k)
    value = max_extracted_energy(state).value
    ratio = value / injected_energy(state, "y")
    return PeakEstimate(h_peak=float(h_peak), value=float(value),
                        ratio_to_injected=float(ratio))


def crossover_field(k: float = 1.0, spacing: float = 0.005) -> float:
    """Field where the x-axis measurement cost overtakes the site-reduction
    maximum, by quadratic interpolation of their difference."""
    hs = np.arange(spacing, 1.0 + spacing / 2.0, spacing) * k

    def gap(h):
        state = _closed_values(h, k)
        return injected_energy(state, "x") - max_site_reduction(state).value

    gaps = np.array([gap(h) for h in hs])
    signs = np.sign(gaps)
    flips = np.where(np.diff(signs) != 0)[0]
    if flips.size == 0:
        raise RuntimeError("no crossover in the scanned field range")
    i = int(flips[0])
    i = min(max(i, 1), len(hs) - 2)
    coeffs = np.polyfit(hs[i - 1:i + 2], gaps[i - 1:i + 2], 2)
    roots = np.roots(coeffs)
    real = roots[np.abs(roots.imag) < 1e-12].real
    inside = real[(real >= hs[i - 1]) & (real <= hs[i + 1])]
    return float(inside[0]) if inside.size else float(hs[i])

"""Isotropic hyperelastic energies on GL+(n) and their derivative chains.

Four families:

* DistortionEnergy     -- planar W(F) = psi(K) with K = ||F||^2 / (2 det F)
* PlanarRatioEnergy    -- planar W(F) = h(lmax/lmin) through the singular values
* IsochoricNeoHooke    -- W(F) = ||F||^2 / det(F)^{2/3} - 3 in three dimensions
* CompositeEnergy      -- isochoric part plus a volumetric splice f(det F)

Every energy exposes value / first_derivative / second_form / cauchy_stress
with a `capabilities` dict flagging which routes are analytic.  The module
level fd_* functions are the independent oracles: they touch nothing but
value() and are the comparison side of every derivative test.

Throughout, first_derivative returns the Frechet derivative D_F W (same
shape as F) and second_form returns the scalar D^2 W(F)[H, H].  The Cauchy
stress is sigma = (1/det F) D_F W F^T.
"""

from collections import namedtuple

import numpy as np

from .exceptions import InvalidSplice, NonPositiveArgument, NotDifferentiable
from .tensors import (
    as_square,
    cofactor,
    det,
    frobenius_norm,
    inner,
    require_gl_plus,
    svd,
    transpose_inverse,
)

FD_STEP_FIRST = 1e-5
FD_STEP_SECOND = 1e-4

# singular value ratios closer to 1 than this are treated as coincident
TIE_GAP = 1e-12
NEAR_TIE_GAP = 1e-8


def fd_first_derivative(energy, F, h=FD_STEP_FIRST):
    """Entry-wise central-difference derivative of energy.value at F.

    The oracle side of every derivative check; uses value() only.
    """
    F = as_square(F)
    step = h * max(1.0, frobenius_norm(F))
    n = F.shape[0]
    P = np.empty((n, n))
    for i in range(n):
        for j in range(n):
            E = np.zeros((n, n))
            E[i, j] = step
            P[i, j] = (energy.value(F + E) - energy.value(F - E)) / (2.0 * step)
    return P


def fd_second_form_from_first(energy, F, H, h=1e-6):
    """Central difference of t -> <first_derivative(F + t H), H> at t = 0.

    Differencing the analytic gradient instead of the value keeps the
    rounding floor near 1e-9 relative, far below what a second difference
    of the value can reach in double precision.  The gradient itself is
    anchored to value() through fd_first_derivative, so the two oracles
    together still validate the full chain.
    """
    F = as_square(F)
    H = as_square(H)
    step = h * max(1.0, frobenius_norm(F))
    Pp = energy.first_derivative(F + step * H)
    Pm = energy.first_derivative(F - step * H)
    return float(inner(Pp - Pm, H)) / (2.0 * step)


def fd_second_form(energy, F, H, h=FD_STEP_SECOND):
    """Central second difference of t -> energy.value(F + t H) at t = 0."""
    F = as_square(F)
    H = as_square(H)
    nrm = frobenius_norm(H)
    if nrm == 0.0:
        return 0.0
    Hn = H / nrm
    step = h * max(1.0, frobenius_norm(F))
    w0 = energy.value(F)
    wp = energy.value(F + step * Hn)
    wm = energy.value(F - step * Hn)
    return nrm**2 * (wp - 2.0 * w0 + wm) / step**2


class EnergyModel:
    """Contract shared by all energies; derivative routes default to FD."""

    dim = None
    label = "energy"
    capabilities = {
        "value": "analytic",
        "first_derivative": "finite-difference",
        "second_form": "finite-difference",
        "cauchy_stress": "finite-difference",
    }

    def _check_dim(self, F):
        F = as_square(F)
        if F.shape[0] != self.dim:
            raise ValueError(
                "%s is a %dD energy, got a %dx%d matrix"
                % (self.label, self.dim, F.shape[0], F.shape[0])
            )
        return F

    def value(self, F):
        raise NotImplementedError

    def first_derivative(self, F):
        return fd_first_derivative(self, self._check_dim(F))

    def second_form(self, F, H):
        return fd_second_form(self, self._check_dim(F), H)

    def cauchy_stress(self, F):
        F = self._check_dim(F)
        d = require_gl_plus(F)
        return (self.first_derivative(F) @ F.T) / d


class DistortionEnergy(EnergyModel):
    """Planar isotropic energy W(F) = psi(K(F)), K = ||F||^2 / (2 det F).

    Parameters
    ----------
    psi : callable on [1, inf)
    dpsi, d2psi : callables or None
        Analytic derivatives of psi.  When omitted they are obtained by
        central differences of psi (one-sided at the K = 1 boundary) and the
        corresponding capability is downgraded to finite-difference.
    """

    dim = 2

    def __init__(self, psi, dpsi=None, d2psi=None, label="psi-distortion"):
        self.psi = psi
        self.dpsi = dpsi
        self.d2psi = d2psi
        self.label = label
        analytic = dpsi is not None and d2psi is not None
        self.capabilities = {
            "value": "analytic",
            "first_derivative": "analytic" if dpsi is not None else "finite-difference",
            "second_form": "analytic" if analytic else "finite-difference",
            "cauchy_stress": "analytic" if dpsi is not None else "finite-difference",
        }

    def _distortion(self, F):
        d = require_gl_plus(F)
        return 0.5 * float(np.sum(F * F)) / d, d

    def _psi_1(self, K):
        if self.dpsi is not None:
            v = float(self.dpsi(K))
        else:
            delta = 1e-6 * max(1.0, abs(K))
            if K - delta >= 1.0:
                v = (self.psi(K + delta) - self.psi(K - delta)) / (2.0 * delta)
            else:
                v = (self.psi(K + delta) - self.psi(K)) / delta
        if not np.isfinite(v):
            raise NotDifferentiable("psi' is not finite at K = %r" % (K,))
        return v

    def _psi_2(self, K):
        if self.d2psi is not None:
            v = float(self.d2psi(K))
        else:
            delta = 1e-4 * max(1.0, abs(K))
            lo = max(K - delta, 1.0)
            hi = K + delta
            mid = 0.5 * (lo + hi)
            half = 0.5 * (hi - lo)
            v = (self.psi(mid + half) - 2.0 * self.psi(mid) + self.psi(mid - half)) / half**2
        if not np.isfinite(v):
            raise NotDifferentiable("psi'' is not finite at K = %r" % (K,))
        return v

    def value(self, F):
        F = self._check_dim(F)
        K, _ = self._distortion(F)
        return float(self.psi(K))

    def first_derivative(self, F):
        # D_F W = psi'(K) (2F - ||F||^2 F^{-T}) / (2 det F)
        F = self._check_dim(F)
        K, d = self._distortion(F)
        FiT = transpose_inverse(F)
        return self._psi_1(K) * (2.0 * F - float(np.sum(F * F)) * FiT) / (2.0 * d)

    def second_form(self, F, H):
        F = self._check_dim(F)
        H = as_square(H)
        K, d = self._distortion(F)
        FiT = transpose_inverse(F)
        n2 = float(np.sum(F * F))
        fh = inner(F, H)
        gh = inner(FiT, H)
        hh = inner(H, H)
        ghh = inner(FiT @ H.T @ FiT, H)
        dK = 0.5 * (2.0 * fh - n2 * gh) / d
        d2K = 0.5 * (2.0 * hh - 4.0 * fh * gh + n2 * gh * gh + n2 * ghh) / d
        return self._psi_2(K) * dK * dK + self._psi_1(K) * d2K

    def cauchy_stress(self, F):
        # sigma = psi'(K) [ F F^T / det^2 - (K / det) id ]
        F = self._check_dim(F)
        K, d = self._distortion(F)
        return self._psi_1(K) * (F @ F.T / d**2 - (K / d) * np.eye(2))


def _ratio_g_partials(h1, h2, s, lam2):
    """Partials of g(l1, l2) = h(l1/l2) on the l1 >= l2 branch."""
    g1 = h1 / lam2
    g2 = -h1 * s / lam2
    g11 = h2 / lam2**2
    g22 = (h2 * s * s + 2.0 * h1 * s) / lam2**2
    g12 = -(h2 * s + h1) / lam2**2
    return g1, g2, g11, g22, g12


def _principal_second_form(g1, g2, g11, g22, g12, U, s, V, H):
    """Second derivative of an isotropic energy, assembled in the SVD frame.

    For W(F) = g(singular values) with distinct singular values,
    D^2 W[H, H] in the frame Ht = U^T H V is the quadratic form with
    diagonal block g_ij and the classical off-diagonal coefficients
    (li gi - lj gj)/(li^2 - lj^2) and (lj gi - li gj)/(li^2 - lj^2).
    """
    Ht = U.T @ H @ V
    quad = (
        g11 * Ht[0, 0] ** 2
        + g22 * Ht[1, 1] ** 2
        + 2.0 * g12 * Ht[0, 0] * Ht[1, 1]
    )
    denom = s[0] ** 2 - s[1] ** 2
    a = (s[0] * g1 - s[1] * g2) / denom
    b = (s[1] * g1 - s[0] * g2) / denom
    quad += a * (Ht[0, 1] ** 2 + Ht[1, 0] ** 2) + 2.0 * b * Ht[0, 1] * Ht[1, 0]
    return quad


class PlanarRatioEnergy(EnergyModel):
    """Planar isotropic energy W(F) = h(lmax/lmin).

    h is evaluated at the sorted ratio s = lmax/lmin >= 1, which realizes the
    symmetry h(s) = h(1/s) without requiring the caller to supply it.  On the
    set lmax = lmin the energy attains its minimum whenever h'(1+) >= 0, and
    the gradient (hence the Cauchy stress) is reported as exactly 0 there:
    the stress of these energies must vanish identically on the conformal
    group, and 0 is the minimal-norm subgradient at a minimum even when h
    has a corner.  h'(1+) < 0 leaves no canonical value and raises
    NotDifferentiable.
    """

    dim = 2

    def __init__(self, h, dh=None, d2h=None, label="ratio-energy"):
        self.h = h
        self.dh = dh
        self.d2h = d2h
        self.label = label
        analytic = dh is not None
        self.capabilities = {
            "value": "analytic",
            "first_derivative": "analytic" if analytic else "finite-difference",
            "second_form": "analytic" if analytic and d2h is not None else "finite-difference",
            "cauchy_stress": "analytic" if analytic else "finite-difference",
        }

    def _h1(self, s):
        if self.dh is not None:
            return float(self.dh(s))
        delta = 1e-6 * max(1.0, s)
        if s - delta >= 1.0:
            return (self.h(s + delta) - self.h(s - delta)) / (2.0 * delta)
        return (self.h(s + delta) - self.h(s)) / delta

    def _h2(self, s):
        if self.d2h is not None:
            return float(self.d2h(s))
        delta = 1e-4 * max(1.0, s)
        lo = max(s - delta, 1.0)
        mid = 0.5 * (lo + s + delta)
        half = 0.5 * (s + delta - lo)
        return (self.h(mid + half) - 2.0 * self.h(mid) + self.h(mid - half)) / half**2

    def value(self, F):
        F = self._check_dim(F)
        U, s, V = svd(F)
        return float(self.h(s[0] / s[1]))

    def first_derivative(self, F):
        F = self._check_dim(F)
        U, s, V = svd(F)
        ratio = s[0] / s[1]
        h1 = self._h1(ratio)
        if ratio - 1.0 < TIE_GAP:
            if h1 >= -1e-8:
                # minimum of the energy on the conformal set; stress must vanish
                return np.zeros((2, 2))
            raise NotDifferentiable(
                "h decreases into the coincident singular values (h'(1+) = %r)" % h1
            )
        return h1 * (np.outer(U[:, 0], V[:, 0]) - ratio * np.outer(U[:, 1], V[:, 1])) / s[1]

    def second_form(self, F, H):
        F = self._check_dim(F)
        H = as_square(H)
        U, s, V = svd(F)
        ratio = s[0] / s[1]
        if (s[0] - s[1]) / s[0] < NEAR_TIE_GAP:
            if abs(self._h1(ratio)) <= 1e-8:
                return fd_second_form(self, F, H)
            raise NotDifferentiable("no second derivative at coincident singular values")
        g = _ratio_g_partials(self._h1(ratio), self._h2(ratio), ratio, s[1])
        return _principal_second_form(*g, U, s, V, H)

    def cauchy_stress(self, F):
        F = self._check_dim(F)
        d = require_gl_plus(F)
        return (self.first_derivative(F) @ F.T) / d


def linear_distortion_squared():
    """The builtin planar energy W(F) = (lmax/lmin)^2 - 1.

    Expressed through the distortion K it is (K + sqrt(K^2 - 1))^2 - 1;
    vanishes exactly on CSO(2) and is strictly rank-one convex.
    """
    return PlanarRatioEnergy(
        h=lambda s: s * s - 1.0,
        dh=lambda s: 2.0 * s,
        d2h=lambda s: 2.0,
        label="linear-distortion-squared",
    )


def distortion_minus_one():
    """The builtin planar energy W(F) = K(F) - 1 (rank-one convex, not strictly)."""
    return DistortionEnergy(
        psi=lambda K: K - 1.0,
        dpsi=lambda K: 1.0,
        d2psi=lambda K: 0.0,
        label="distortion-minus-one",
    )


class IsochoricNeoHooke(EnergyModel):
    """W(F) = ||F||^2 / det(F)^{2/3} - 3 on GL+(3); vanishes exactly on CSO(3)."""

    dim = 3
    label = "isochoric-neo-hooke"
    capabilities = {
        "value": "analytic",
        "first_derivative": "analytic",
        "second_form": "analytic",
        "cauchy_stress": "analytic",
    }

    def value(self, F):
        F = self._check_dim(F)
        d = require_gl_plus(F)
        return float(np.sum(F * F)) / d ** (2.0 / 3.0) - 3.0

    def first_derivative(self, F):
        F = self._check_dim(F)
        d = require_gl_plus(F)
        FiT = transpose_inverse(F)
        return (2.0 * F - (2.0 / 3.0) * float(np.sum(F * F)) * FiT) / d ** (2.0 / 3.0)

    def second_form(self, F, H):
        F = self._check_dim(F)
        H = as_square(H)
        d = require_gl_plus(F)
        FiT = transpose_inverse(F)
        scale = d ** (2.0 / 3.0)
        n2s = float(np.sum(F * F)) / scale
        fh = inner(F, H)
        gh = inner(FiT, H)
        return (
            -(8.0 / 3.0) * gh * fh / scale
            + 2.0 * inner(H, H) / scale
            + (4.0 / 9.0) * n2s * gh * gh
            + (2.0 / 3.0) * n2s * inner(FiT @ H.T @ FiT, H)
        )

    def cauchy_stress(self, F):
        F = self._check_dim(F)
        d = require_gl_plus(F)
        scale = d ** (5.0 / 3.0)
        return 2.0 * (F @ F.T) / scale - (2.0 / 3.0) * float(np.sum(F * F)) / scale * np.eye(3)


VolumetricValues = namedtuple("VolumetricValues", ["value", "d1", "d2"])


class VolumetricTerm:
    """The C^1 volumetric splice f with minimum at 1 and constant slope band.

        f(t) = ln^2 t                                   t < e
        f(t) = 1 + 2 (t - e) / e                        e <= t <= c
        f(t) = 1 + (2/e) (exp(t - c) + c - e - 1)       t > c

    f is C^1 everywhere with f(1) = f'(1) = 0, f''(1) = 2, and f' = 2/e on
    the whole band [e, c].  The second derivative jumps at t = c; evaluate()
    reports d2 as a (left, right) pair exactly at the splice points and as a
    plain float elsewhere.
    """

    def __init__(self, c=np.e + 2.0):
        if not c > np.e:
            raise InvalidSplice("splice point c = %r must lie strictly above e" % (c,))
        self.c = float(c)

    def evaluate(self, t):
        t = float(t)
        if not t > 0.0:
            raise NonPositiveArgument("volumetric argument t = %r must be positive" % (t,))
        e = np.e
        if t < e:
            lg = np.log(t)
            return VolumetricValues(lg * lg, 2.0 * lg / t, 2.0 * (1.0 - lg) / t**2)
        if t == e:
            return VolumetricValues(1.0, 2.0 / e, (0.0, 0.0))
        if t < self.c:
            return VolumetricValues(1.0 + 2.0 * (t - e) / e, 2.0 / e, 0.0)
        if t == self.c:
            return VolumetricValues(1.0 + 2.0 * (t - e) / e, 2.0 / e, (0.0, 2.0 / e))
        ex = np.exp(t - self.c)
        return VolumetricValues(
            1.0 + (2.0 / e) * (ex + self.c - e - 1.0),
            (2.0 / e) * ex,
            (2.0 / e) * ex,
        )


def _d2_scalar(vol_values, t):
    d2 = vol_values.d2
    if isinstance(d2, tuple):
        raise NotDifferentiable(
            "volumetric second derivative is one-sided at the splice point t = %r" % (t,)
        )
    return d2


class CompositeEnergy(EnergyModel):
    """W(F) = W_iso(F / det^{1/n}) + f(det F) for a conformally invariant W_iso.

    Invariance of the isochoric part makes W_iso(F / det^{1/n}) = W_iso(F),
    so all derivative chains reduce to the iso chains plus cofactor terms;
    the constructor probes the invariance once and refuses energies that
    fail it.
    """

    def __init__(self, iso, vol, label=None):
        self.iso = iso
        self.vol = vol
        self.dim = iso.dim
        self.label = label or ("composite-" + iso.label)
        probe = np.eye(self.dim) * 1.0
        a, b = iso.value(1.7 * probe), iso.value(probe)
        if abs(a - b) > 1e-8 * (1.0 + abs(b)):
            raise ValueError("iso part must be conformally invariant to compose")
        caps = dict(iso.capabilities)
        caps["cauchy_stress"] = caps["first_derivative"]
        self.capabilities = caps

    def value(self, F):
        F = self._check_dim(F)
        d = require_gl_plus(F)
        return self.iso.value(F / d ** (1.0 / self.dim)) + self.vol.evaluate(d).value

    def first_derivative(self, F):
        F = self._check_dim(F)
        d = require_gl_plus(F)
        return self.iso.first_derivative(F) + self.vol.evaluate(d).d1 * cofactor(F)

    def second_form(self, F, H):
        F = self._check_dim(F)
        H = as_square(H)
        d = require_gl_plus(F)
        vals = self.vol.evaluate(d)
        FiT = transpose_inverse(F)
        gh = inner(FiT, H)
        cof_h = d * gh
        # D^2 det[H,H] = det (  <F^{-T},H>^2 - <F^{-T} H^T F^{-T}, H> )
        det_curv = d * (gh * gh - inner(FiT @ H.T @ FiT, H))
        return (
            self.iso.second_form(F, H)
            + _d2_scalar(vals, d) * cof_h * cof_h
            + vals.d1 * det_curv
        )

    def cauchy_stress(self, F):
        F = self._check_dim(F)
        d = require_gl_plus(F)
        return self.iso.cauchy_stress(F) + self.vol.evaluate(d).d1 * np.eye(self.dim)


BUILTIN_ENERGIES = ("iso2d-klin2", "iso2d-psi", "iso3d", "composite2d", "composite3d")


def builtin_energy(name, c=np.e + 2.0):
    """Construct one of the named energies used by the command line tools."""
    if name == "iso2d-klin2":
        return linear_distortion_squared()
    if name == "iso2d-psi":
        return distortion_minus_one()
    if name == "iso3d":
        return IsochoricNeoHooke()
    if name == "composite2d":
        return CompositeEnergy(linear_distortion_squared(), VolumetricTerm(c))
    if name == "composite3d":
        return CompositeEnergy(IsochoricNeoHooke(), VolumetricTerm(c))
    raise ValueError("unknown energy %r (choose from %s)" % (name, ", ".join(BUILTIN_ENERGIES)))

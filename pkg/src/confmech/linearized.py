"""Linearized picture: trace-free symmetrized gradients and conformal Killing fields.

The planar quadratic energy mu |dev sym grad u|^2 vanishes exactly on the
displacements whose symmetrized gradient is a multiple of the identity, the
(planar) conformal Killing fields

    u(x) = (1/2) [ 2 <w, x> x - w |x|^2 ] + (p id + A) x + b,   A skew.

kernel_displacement evaluates that family with an analytic gradient; the
quadratic approximation of the inversion-with-flip map around (0.5, 0) is the
member with w = (16, 0), p = -13, b = (6, 0), and its closeness to the true
map is measured on the small disk where the approximation was derived.
"""

from dataclasses import dataclass

import numpy as np

from .conformal import InversionFlip
from .tensors import as_square, dev, sym

VOL_CURVATURE_AT_ONE = 2.0  # f''(1) of the volumetric splice


def w_lin_2d(grad_u, mu=1.0):
    """Quadratic energy mu |dev_2 sym grad u|^2."""
    G = as_square(grad_u)
    if G.shape[0] != 2:
        raise ValueError("w_lin_2d expects a 2x2 displacement gradient")
    D = dev(sym(G))
    return mu * float(np.sum(D * D))


def sigma_lin(grad_u, mu=1.0):
    """Linearized stress 2 mu dev sym grad u."""
    G = as_square(grad_u)
    if G.shape[0] != 2:
        raise ValueError("sigma_lin expects a 2x2 displacement gradient")
    return 2.0 * mu * dev(sym(G))


def w_lin_3d_composite(grad_u):
    """Linearization of the composite 3D energy: 2 |dev_3 sym grad u|^2 + (f''(1)/2) tr^2."""
    G = as_square(grad_u)
    if G.shape[0] != 3:
        raise ValueError("w_lin_3d_composite expects a 3x3 displacement gradient")
    D = dev(sym(G))
    tr = float(np.trace(G))
    return 2.0 * float(np.sum(D * D)) + 0.5 * VOL_CURVATURE_AT_ONE * tr * tr


@dataclass(frozen=True)
class KernelDisplacement:
    """Parameters (beta, gamma, p_hat, A_hat, b_hat) of a planar conformal Killing field."""

    beta: float
    gamma: float
    p_hat: float
    a_hat: np.ndarray  # skew 2x2, one free parameter
    b_hat: np.ndarray

    def __post_init__(self):
        A = as_square(self.a_hat)
        if A.shape[0] != 2 or abs(A[0, 0]) > 1e-12 or abs(A[1, 1]) > 1e-12 \
                or abs(A[0, 1] + A[1, 0]) > 1e-12:
            raise ValueError("a_hat must be a skew-symmetric 2x2 matrix")
        b = np.asarray(self.b_hat, dtype=float)
        if b.shape != (2,):
            raise ValueError("b_hat must be a 2-vector")
        object.__setattr__(self, "a_hat", A)
        object.__setattr__(self, "b_hat", b)

    @property
    def w(self):
        """The quadratic-part direction vector (-gamma, beta)."""
        return np.array([-self.gamma, self.beta])

    @classmethod
    def from_scalars(cls, beta=0.0, gamma=0.0, p_hat=0.0, spin=0.0, b_hat=(0.0, 0.0)):
        A = np.array([[0.0, spin], [-spin, 0.0]])
        return cls(beta=beta, gamma=gamma, p_hat=p_hat, a_hat=A, b_hat=np.asarray(b_hat, float))


def kernel_displacement(k, x):
    """Evaluate a kernel field: returns (u, grad_u) with the gradient in closed form.

    grad u = <w, x> id + x (x) w - w (x) x + p_hat id + A_hat, whose
    symmetrized trace-free part vanishes identically.
    """
    x = np.asarray(x, dtype=float)
    if x.shape != (2,):
        raise ValueError("x must be a 2-vector")
    w = k.w
    wx = float(w @ x)
    u = 0.5 * (2.0 * wx * x - w * float(x @ x)) + (k.p_hat * np.eye(2) + k.a_hat) @ x + k.b_hat
    grad = wx * np.eye(2) + np.outer(x, w) - np.outer(w, x) + k.p_hat * np.eye(2) + k.a_hat
    return u, grad


@dataclass(frozen=True)
class QuadraticApprox:
    """Coefficients of the quadratic displacement u = (1/2)[2<w,x>x - w|x|^2] + p x + b."""

    w: np.ndarray
    p: float
    b: np.ndarray

    def as_kernel_displacement(self):
        # w = (-gamma, beta)
        return KernelDisplacement.from_scalars(
            beta=float(self.w[1]), gamma=-float(self.w[0]), p_hat=self.p, spin=0.0,
            b_hat=self.b,
        )

    def displacement(self, x):
        u, _ = kernel_displacement(self.as_kernel_displacement(), x)
        return u


def conformal_quadratic_approx():
    """The quadratic approximation of (x1,-x2)/|x|^2 around (0.5, 0)."""
    return QuadraticApprox(w=np.array([16.0, 0.0]), p=-13.0, b=np.array([6.0, 0.0]))


def quadratic_approx_error(center=(0.5, 0.0), radius=0.15, n_samples=500, seed=0):
    """Max |x + u(x) - phi(x)| of the quadratic approximation over a disk.

    Sampled at seeded uniform points of the disk around the expansion point;
    the approximation is exact at the center and degrades like the cube of
    the distance from it.
    """
    approx = conformal_quadratic_approx()
    phi = InversionFlip(2)
    center = np.asarray(center, dtype=float)
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(int(n_samples)):
        r = radius * np.sqrt(rng.uniform())
        a = rng.uniform(0.0, 2.0 * np.pi)
        x = center + r * np.array([np.cos(a), np.sin(a)])
        gap = x + approx.displacement(x) - phi.evaluate(x)
        worst = max(worst, float(np.sqrt(gap @ gap)))
    return worst

"""Finite-difference Dirichlet Laplacian on 2-D node-centred grids.

A :class:`RasterDomain` marks the grid nodes lying strictly inside a planar
shape.  When the shape geometry is known, each interior node also records how
far the boundary is along the four grid directions ("arms", as fractions of
h).  The operator is the symmetric cut-cell variant of the 5-point stencil:

    (sum_dir 1/arm_dir) w_c - sum_{interior nbrs} w_nbr = h^2 f

which reduces to ``4 w_c - w_N - w_S - w_E - w_W`` when every arm is 1 (plain
masks, or boundaries passing through grid nodes) and is second-order accurate
for curved boundaries.  The matrix stays symmetric positive definite, so
conjugate gradients apply.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

import numpy as np
import scipy.linalg
import scipy.sparse as sp
import scipy.sparse.linalg as spla
from scipy import ndimage

from .errors import DomainError, NumericError, ResolutionError, UnsupportedOperation
from .shapes import Ball, DisjointUnion, Method, Rect, Shape, SpectralSummary, measure

# E, W, N, S
_DIRECTIONS = ((1, 0), (-1, 0), (0, 1), (0, -1))
_MIN_ARM = 1e-6


@dataclass(eq=False)
class RasterDomain:
    """Interior-node mask on a uniform grid; node (i, j) sits at origin + h*(i, j).

    ``mask`` has shape (nx, ny).  ``arms`` (shape (4, nx, ny), order E, W,
    N, S) holds boundary distances in units of h; ``None`` means every
    exterior neighbour is a full step away.
    """

    h: float
    mask: np.ndarray
    origin: tuple = (0.0, 0.0)
    arms: Optional[np.ndarray] = None
    source: Optional[Shape] = None

    def __post_init__(self):
        self.mask = np.asarray(self.mask, dtype=bool)
        if self.mask.ndim != 2:
            raise DomainError("mask must be two-dimensional")
        if not self.h > 0:
            raise DomainError(f"grid spacing must be positive, got {self.h!r}")
        if not self.mask.any():
            raise ResolutionError("raster has no interior nodes")

    @property
    def nx(self) -> int:
        return self.mask.shape[0]

    @property
    def ny(self) -> int:
        return self.mask.shape[1]

    @property
    def count(self) -> int:
        return int(self.mask.sum())

    @property
    def measure(self) -> float:
        return self.count * self.h**2

    def n_components(self) -> int:
        _, n = ndimage.label(self.mask)
        return n

    def coordinates(self):
        """x and y coordinates of interior nodes, in node order."""
        i, j = np.nonzero(self.mask)
        return self.origin[0] + self.h * i, self.origin[1] + self.h * j


@dataclass(eq=False)
class GridField:
    domain: RasterDomain
    values: np.ndarray

    def to_grid(self, fill=np.nan) -> np.ndarray:
        out = np.full(self.domain.mask.shape, fill, dtype=float)
        out[self.domain.mask] = self.values
        return out


# ---------------------------------------------------------------------------
# rasterization


def _parts(s):
    if isinstance(s, DisjointUnion):
        for p in s.parts:
            yield from _parts(p)
    elif isinstance(s, Ball) and s.d == 2:
        yield s
    elif isinstance(s, Rect):
        yield s
    else:
        raise UnsupportedOperation(f"cannot rasterize {type(s).__name__} (2-D balls, rectangles and unions only)")


# nodes closer than this (in units of h) to the boundary count as boundary
# nodes, so that lattice points on an edge are not let in by rounding
_SNAP = 1e-9


class _PlacedBall:
    def __init__(self, ball, cx, cy, h):
        self.R, self.cx, self.cy = ball.r, cx, cy
        self.snap = _SNAP * h

    def inside(self, x, y):
        return self.R - np.hypot(x - self.cx, y - self.cy) > self.snap

    def arm(self, x, y, di, dj, h):
        px, py = x - self.cx, y - self.cy
        if di:
            reach = np.sqrt(np.maximum(self.R**2 - py**2, 0.0))
            dist = reach - di * px
        else:
            reach = np.sqrt(np.maximum(self.R**2 - px**2, 0.0))
            dist = reach - dj * py
        return dist / h


class _PlacedRect:
    def __init__(self, rect, x0, y0, h):
        self.w, self.hgt, self.x0, self.y0 = rect.b, rect.a, x0, y0
        self.snap = _SNAP * h

    def inside(self, x, y):
        e = self.snap
        return ((x - self.x0 > e) & (self.x0 + self.w - x > e)
                & (y - self.y0 > e) & (self.y0 + self.hgt - y > e))

    def arm(self, x, y, di, dj, h):
        if di == 1:
            dist = self.x0 + self.w - x
        elif di == -1:
            dist = x - self.x0
        elif dj == 1:
            dist = self.y0 + self.hgt - y
        else:
            dist = y - self.y0
        return dist / h


def rasterize(s: Shape, h: float) -> RasterDomain:
    """Node-centred raster of a planar ball, rectangle or disjoint union.

    Union parts are laid out left to right with at least one exterior grid
    column between them.  Ball centres and rectangle corners sit on grid
    nodes.  A node is interior iff it lies strictly inside its part.  Every
    part must have inradius at least ``h``; coarser grids raise
    :class:`ResolutionError`.
    """
    if not h > 0:
        raise DomainError(f"grid spacing must be positive, got {h!r}")
    parts = list(_parts(s))
    for p in parts:
        inradius = p.r if isinstance(p, Ball) else p.a / 2
        if inradius < h * (1 - 1e-12):
            raise ResolutionError(f"grid spacing h={h} exceeds the inradius {inradius:.6g} of {p}")

    placed = []
    col = 1
    height = 0
    for p in parts:
        if isinstance(p, Ball):
            n = math.ceil(p.r / h)
            placed.append(("ball", p, col + n, n))
            col += 2 * n + 2
            height = max(height, 2 * n)
        else:
            nb, na = math.ceil(p.b / h), math.ceil(p.a / h)
            placed.append(("rect", p, col, na))
            col += nb + 2
            height = max(height, na)
    nx, ny = col, height + 3

    ii, jj = np.meshgrid(np.arange(nx), np.arange(ny), indexing="ij")
    X, Y = ii * h, jj * h
    mask = np.zeros((nx, ny), dtype=bool)
    arms = np.ones((4, nx, ny))
    owner = np.full((nx, ny), -1)
    geoms = []
    for k, (kind, p, anchor, extent) in enumerate(placed):
        if kind == "ball":
            g = _PlacedBall(p, anchor * h, (1 + extent) * h, h)
        else:
            g = _PlacedRect(p, anchor * h, h, h)
        geoms.append(g)
        inside = g.inside(X, Y)
        if not inside.any():
            raise ResolutionError(f"grid spacing h={h} leaves no interior node in {p}")
        mask |= inside
        owner[inside] = k
    if not mask.any():
        raise ResolutionError(f"grid spacing h={h} leaves no interior node")

    for k, g in enumerate(geoms):
        sel = owner == k
        x, y = X[sel], Y[sel]
        for d, (di, dj) in enumerate(_DIRECTIONS):
            nb_inside = g.inside(x + di * h, y + dj * h)
            arm = np.where(nb_inside, 1.0, np.clip(g.arm(x, y, di, dj, h), _MIN_ARM, 1.0))
            arms[d][sel] = arm
    return RasterDomain(h=h, mask=mask, arms=arms, source=s)


def from_mask(mask, h: float, origin=(0.0, 0.0)) -> RasterDomain:
    """Plain raster from a boolean array indexed [i, j] = [x, y]."""
    return RasterDomain(h=float(h), mask=np.asarray(mask, dtype=bool), origin=tuple(origin))


def load_mask(path) -> RasterDomain:
    """Read the text mask format: a header ``h nx ny`` then ny rows of nx
    '0'/'1' characters, top row (largest y) first."""
    lines = Path(path).read_text().split()
    try:
        h, nx, ny = float(lines[0]), int(lines[1]), int(lines[2])
    except (IndexError, ValueError):
        raise ValueError(f"{path}: bad mask header") from None
    rows = lines[3:]
    if len(rows) != ny or any(len(r) != nx or set(r) - {"0", "1"} for r in rows):
        raise ValueError(f"{path}: expected {ny} rows of {nx} '0'/'1' characters")
    grid = np.array([[c == "1" for c in r] for r in rows], dtype=bool)
    return from_mask(grid[::-1].T, h)


def save_mask(dom: RasterDomain, path) -> None:
    rows = ["".join("1" if v else "0" for v in row) for row in dom.mask.T[::-1]]
    Path(path).write_text(f"{dom.h!r} {dom.nx} {dom.ny}\n" + "\n".join(rows) + "\n")


# ---------------------------------------------------------------------------
# operator and solvers


def laplacian(dom: RasterDomain) -> sp.csr_matrix:
    """Sparse SPD matrix of the discrete Dirichlet Laplacian on interior nodes."""
    mask = np.pad(dom.mask, 1)
    idx = np.full(mask.shape, -1)
    idx[mask] = np.arange(dom.count)
    I, J = np.nonzero(mask)
    me = idx[I, J]
    diag = np.zeros(dom.count)
    rows, cols = [me], [me]
    off = []
    for d, (di, dj) in enumerate(_DIRECTIONS):
        nb = idx[I + di, J + dj]
        inner = nb >= 0
        rows.append(me[inner])
        cols.append(nb[inner])
        off.append(-np.ones(inner.sum()))
        arm = np.ones(dom.count) if dom.arms is None else dom.arms[d][dom.mask]
        diag += np.where(inner, 1.0, 1.0 / arm)
    data = np.concatenate([diag] + off) / dom.h**2
    n = dom.count
    return sp.csr_matrix((data, (np.concatenate(rows), np.concatenate(cols))), shape=(n, n))


def pcg(A, b, tol, maxiter=None):
    """Jacobi-preconditioned conjugate gradients, stopping at ||r|| <= tol."""
    n = b.shape[0]
    maxiter = maxiter or 20 * n + 200
    inv_diag = 1.0 / A.diagonal()
    x = np.zeros_like(b)
    r = b.copy()
    z = inv_diag * r
    p = z.copy()
    rz = r @ z
    for _ in range(maxiter):
        if np.linalg.norm(r) <= tol:
            return x
        Ap = A @ p
        step = rz / (p @ Ap)
        x += step * p
        r -= step * Ap
        z = inv_diag * r
        rz_new = r @ z
        p = z + (rz_new / rz) * p
        rz = rz_new
    if np.linalg.norm(r) <= tol:
        return x
    raise NumericError(f"CG did not reach residual {tol:.3g} in {maxiter} iterations")


def torsion_fd(dom: RasterDomain) -> tuple[float, GridField]:
    """Discrete torsion function (-Lap w = 1) and T = h^2 sum(w)."""
    A = laplacian(dom)
    n = dom.count
    w = pcg(A, np.ones(n), 1e-10 * math.sqrt(n))
    return dom.h**2 * float(w.sum()), GridField(dom, w)


def eigen_fd(dom: RasterDomain, k: int = 1, solver: str = "lu", tol: float = 1e-9,
             maxiter: int = 1000, return_vectors: bool = False):
    """The ``k`` smallest eigenvalues (k in {1, 2}) of the discrete Laplacian.

    Block inverse iteration with k+2 vectors: each sweep applies A^-1 (a
    sparse LU factorisation reused across sweeps, or CG with ``solver="cg"``),
    re-orthonormalises, and takes Rayleigh-Ritz values on the block.  The
    Ritz projection deflates the converged lowest mode from the rest, so
    degenerate pairs such as two equal disks are resolved.  Stops when the
    wanted Ritz values change by less than ``tol`` relatively.
    """
    if k not in (1, 2):
        raise DomainError(f"k must be 1 or 2, got {k!r}")
    n = dom.count
    if k > n:
        raise DomainError(f"only {n} interior nodes; cannot compute {k} eigenvalues")
    A = laplacian(dom)
    p = min(n, k + 2)
    if n <= 8:
        vals, vecs = np.linalg.eigh(A.toarray())
        return _finish(dom, vals[:k], vecs[:, :k], return_vectors)

    if solver == "lu":
        solve = spla.splu(A.tocsc()).solve
    elif solver == "cg":
        cg_tol = 1e-12 * math.sqrt(n)

        def solve(B):
            return np.column_stack([pcg(A, B[:, c], cg_tol * np.linalg.norm(B[:, c]) / math.sqrt(n))
                                    for c in range(B.shape[1])])
    else:
        raise DomainError(f"unknown solver {solver!r}")

    rng = np.random.default_rng(12345)
    V = rng.standard_normal((n, p))
    V[:, 0] = 1.0
    theta_old = None
    for _ in range(maxiter):
        W = solve(V)
        Q, _ = np.linalg.qr(W)
        H = Q.T @ (A @ Q)
        theta, S = scipy.linalg.eigh(0.5 * (H + H.T))
        V = Q @ S
        if theta_old is not None and np.all(np.abs(theta[:k] - theta_old[:k]) <= tol * theta[:k]):
            return _finish(dom, theta[:k], V[:, :k], return_vectors)
        theta_old = theta
    raise NumericError(f"inverse iteration did not converge in {maxiter} sweeps")


def _finish(dom, vals, vecs, return_vectors):
    vals = [float(v) for v in vals]
    if not return_vectors:
        return vals
    fields = []
    for c in range(vecs.shape[1]):
        v = vecs[:, c]
        v = v / np.linalg.norm(v)
        if v.sum() < 0:
            v = -v
        fields.append(GridField(dom, v))
    return vals, fields


def extrapolate(coarse: float, fine: float) -> float:
    """Richardson step for an O(h^2) quantity computed at h and h/2."""
    return (4.0 * fine - coarse) / 3.0


# ---------------------------------------------------------------------------
# summaries


def domain_summary(dom: RasterDomain) -> SpectralSummary:
    """FD summary at the raster's own spacing.

    ``err`` is the leading-order consistency estimate lambda1 h^2 / 6 (a few
    times the observed O(h^2) error on disks and squares).
    """
    T, _ = torsion_fd(dom)
    lams = eigen_fd(dom, 2 if dom.count >= 2 else 1)
    m = measure(dom.source) if dom.source is not None else dom.measure
    return SpectralSummary(
        lambda1=lams[0],
        lambda2=lams[1] if len(lams) > 1 else None,
        torsion=T,
        measure=m,
        dim=2,
        method=Method.FINITE_DIFFERENCE,
        err=lams[0] * dom.h**2 / 6.0,
        meta={"h": dom.h, "nodes": dom.count},
    )


def fd_summary(s: Shape, h: float, refine: bool = False) -> SpectralSummary:
    """FD summary of a planar shape; with ``refine`` also solve at h/2 and
    report Richardson-extrapolated values, err = max |fine - extrap| / extrap."""
    coarse = domain_summary(rasterize(s, h))
    if not refine:
        return coarse
    fine = domain_summary(rasterize(s, h / 2))
    ext = {
        name: extrapolate(getattr(coarse, name), getattr(fine, name))
        for name in ("lambda1", "torsion")
    }
    if coarse.lambda2 is not None and fine.lambda2 is not None:
        ext["lambda2"] = extrapolate(coarse.lambda2, fine.lambda2)
    err = max(abs(getattr(fine, k) - v) / abs(v) for k, v in ext.items())
    return SpectralSummary(
        lambda1=ext["lambda1"],
        lambda2=ext.get("lambda2"),
        torsion=ext["torsion"],
        measure=fine.measure,
        dim=2,
        method=Method.FINITE_DIFFERENCE,
        err=err,
        meta={"h": h, "refined": True},
    )

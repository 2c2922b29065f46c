"""Deterministic adaptive quadrature over rectangles in the upper half-plane.

Cells carry an embedded Gauss-Legendre pair (4x4 inside 8x8); the difference
is the cell error estimate.  Refinement is worst-first with stable ordering,
so a fixed cell schedule is reproducible bit for bit.  No randomness.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import QuadratureFailure

_N4, _W4 = np.polynomial.legendre.leggauss(4)
_N8, _W8 = np.polynomial.legendre.leggauss(8)


def _grid(nodes, weights, u0, u1, v0, v1):
    su, sv = (u1 - u0) / 2.0, (v1 - v0) / 2.0
    uu = u0 + su * (nodes + 1.0)
    vv = v0 + sv * (nodes + 1.0)
    um, vm = np.meshgrid(uu, vv, indexing="ij")
    wm = su * sv * np.outer(weights, weights)
    return um.ravel(), vm.ravel(), wm.ravel()


@dataclass
class _Cell:
    u0: float
    u1: float
    v0: float
    v1: float
    value: float = 0.0
    err: float = 0.0


def _evaluate(f: Callable, cells: list[_Cell]) -> None:
    """Fill value/err of cells with one batched integrand call."""
    if not cells:
        return
    us, vs, ws, offs = [], [], [], []
    pos = 0
    for c in cells:
        for nodes, weights in ((_N4, _W4), (_N8, _W8)):
            u, v, w = _grid(nodes, weights, c.u0, c.u1, c.v0, c.v1)
            us.append(u)
            vs.append(v)
            ws.append(w)
            offs.append((pos, pos + u.size))
            pos += u.size
    vals = f(np.concatenate(us), np.concatenate(vs))
    wall = np.concatenate(ws)
    for k, c in enumerate(cells):
        a4, b4 = offs[2 * k]
        a8, b8 = offs[2 * k + 1]
        i4 = float(np.dot(vals[a4:b4], wall[a4:b4]))
        i8 = float(np.dot(vals[a8:b8], wall[a8:b8]))
        c.value = i8
        c.err = abs(i8 - i4)


def adaptive_integrate(
    f: Callable,
    u0: float,
    u1: float,
    v0: float,
    v1: float,
    abs_tol: float,
    rel_tol: float,
    max_cells: int = 6000,
    max_depth: int = 30,
    initial: tuple[int, int] = (8, 6),
    force_points: tuple = (),
    force_size: float = 0.0,
) -> tuple[float, float]:
    """Integrate f(u, v) over the rectangle; returns (value, error_bound).

    f must accept equal-length arrays and include any measure factor.  Cells
    containing a force point are pre-split until their sides are below
    force_size, which keeps small excision masks resolved.
    """
    nu, nv = initial
    cells = []
    for iu in range(nu):
        for iv in range(nv):
            cells.append(
                _Cell(
                    u0 + (u1 - u0) * iu / nu,
                    u0 + (u1 - u0) * (iu + 1) / nu,
                    v0 + (v1 - v0) * iv / nv,
                    v0 + (v1 - v0) * (iv + 1) / nv,
                )
            )
    if force_points and force_size > 0:
        final = []
        queue = cells
        while queue:
            c = queue.pop()
            hit = any(
                c.u0 - 1e-12 <= pu <= c.u1 + 1e-12 and c.v0 - 1e-12 <= pv <= c.v1 + 1e-12
                for pu, pv in force_points
            )
            if hit and max(c.u1 - c.u0, c.v1 - c.v0) > force_size:
                queue.extend(_split(c))
            else:
                final.append(c)
        cells = final
    _evaluate(f, cells)

    counter = len(cells)
    heap = [(-c.err, i, c) for i, c in enumerate(cells)]
    heapq.heapify(heap)
    depth = {id(c): 0 for c in cells}
    n_leaves = len(cells)
    while True:
        total_value = sum(c.value for _, _, c in heap)
        total_err = sum(-e for e, _, _ in heap)
        tol = max(abs_tol, rel_tol * abs(total_value))
        if total_err <= tol:
            return total_value, total_err
        if n_leaves >= max_cells:
            raise QuadratureFailure(
                f"error {total_err:.3g} above tolerance {tol:.3g} with {n_leaves} cells"
            )
        # Split the worst batch.
        batch = []
        for _ in range(min(max(4, n_leaves // 8), len(heap))):
            err, idx, cell = heapq.heappop(heap)
            if -err <= tol / max(n_leaves, 1) / 4:
                heapq.heappush(heap, (err, idx, cell))
                break
            batch.append(cell)
        if not batch:
            total_value = sum(c.value for _, _, c in heap)
            return total_value, sum(-e for e, _, _ in heap)
        children = []
        for cell in batch:
            d = depth.get(id(cell), 0)
            if d >= max_depth:
                raise QuadratureFailure("max subdivision depth reached")
            kids = _split(cell)
            for k in kids:
                depth[id(k)] = d + 1
            children.extend(kids)
        _evaluate(f, children)
        for k in children:
            counter += 1
            heapq.heappush(heap, (-k.err, counter, k))
        n_leaves += len(children) - len(batch)


def _split(c: _Cell) -> list[_Cell]:
    um = 0.5 * (c.u0 + c.u1)
    vm = 0.5 * (c.v0 + c.v1)
    return [
        _Cell(c.u0, um, c.v0, vm),
        _Cell(um, c.u1, c.v0, vm),
        _Cell(c.u0, um, vm, c.v1),
        _Cell(um, c.u1, vm, c.v1),
    ]

"""
This module contains the three associator families whose vanishing is the WDVV system.

With g = -G the z-block of eta and g^{pq} its inverse:

    D1_ij   = g_ij c_ttt + g^pq (c_ttp c_ijq - c_tip c_tjq)
    D2_ijk  = g_jk c_tti - g_ij c_ttk + g^pq (c_tip c_jkq - c_tkp c_ijq)
    D3_ijrs = g_ij c_trs + g_rs c_tij - g_is c_trj - g_rj c_tis + g^pq (c_ijp c_rsq - c_isp c_rjq)
"""

from dataclasses import dataclass

import numpy as np

from models.data_models import DEFAULT_SERIES, SeriesParams
from special_functions.modular import eisenstein
from wdvv.prepotential import POLE_GUARD, ModuliPoint, Prepotential, StructureTensor, c_tensor


@dataclass(frozen=True)
class Associators:
    d1: np.ndarray
    d2: np.ndarray
    d3: np.ndarray

    def __iter__(self):
        return iter((self.d1, self.d2, self.d3))

    def max_abs(self) -> float:
        return float(max(np.max(np.abs(d), initial=0.0) for d in self))

    def difference(self, other: "Associators") -> float:
        return float(max(np.max(np.abs(a - b), initial=0.0) for a, b in zip(self, other)))


def from_structure(tensor: StructureTensor) -> Associators:
    """Evaluate the coordinate forms on an assembled tensor."""
    n = tensor.rank
    g = tensor.eta[1:n + 1, 1:n + 1]
    ginv = np.linalg.inv(g)
    zzz, tzz, ttz, ttt = tensor.zzz, tensor.tzz, tensor.ttz, tensor.ttt

    d1 = (g * ttt
          + np.einsum("pq,p,ijq->ij", ginv, ttz, zzz)
          - np.einsum("pq,ip,jq->ij", ginv, tzz, tzz))
    d2 = (np.einsum("jk,i->ijk", g, ttz)
          - np.einsum("ij,k->ijk", g, ttz)
          + np.einsum("pq,ip,jkq->ijk", ginv, tzz, zzz)
          - np.einsum("pq,kp,ijq->ijk", ginv, tzz, zzz))
    d3 = (np.einsum("ij,rs->ijrs", g, tzz)
          + np.einsum("rs,ij->ijrs", g, tzz)
          - np.einsum("is,rj->ijrs", g, tzz)
          - np.einsum("rj,is->ijrs", g, tzz)
          + np.einsum("pq,ijp,rsq->ijrs", ginv, zzz, zzz)
          - np.einsum("pq,isp,rjq->ijrs", ginv, zzz, zzz))
    return Associators(d1, d2, d3)


def associators(prepotential: Prepotential, pt: ModuliPoint, params: SeriesParams = DEFAULT_SERIES,
                guard: float = POLE_GUARD) -> Associators:
    """
    The associators D1, D2, D3 at a point, assembled from c_tensor.

    Raises:
        LatticePointError: If a pairing is within the guard radius of the lattice
    """
    return from_structure(c_tensor(prepotential, pt, params, guard))


def associators_expanded(prepotential: Prepotential, pt: ModuliPoint,
                         params: SeriesParams = DEFAULT_SERIES, guard: float = POLE_GUARD) -> Associators:
    """
    The associators written directly as bilinear forms in the f-derivatives.

    Double sums run over pairs of vectors alpha, beta with K = A G^{-1} A^T the
    matrix of pairings (alpha, beta). This path never builds c.
    """
    system = prepotential.system
    lowered, hs, gram = system.numeric
    f30, f21, f12, f03 = prepotential.third_derivatives(pt, params, guard)
    k = lowered @ np.linalg.inv(gram) @ lowered.T
    weight = np.outer(hs, hs) * k  # indexed (alpha, beta)
    a = lowered

    ttt = np.sum(hs * f03)
    if prepotential.corrected:
        ttt += float(prepotential.mu) * eisenstein(4, pt.tau.tau, params) / 120
    d1 = (-gram * ttt
          + np.einsum("ab,aj,bi,b,a->ij", weight, a, a, f21, f21)
          - np.einsum("ab,aj,ai,b,a->ij", weight, a, a, f12, f30))

    single = hs * f12
    d2 = (np.einsum("ij,ak,a->ijk", gram, a, single)
          - np.einsum("kj,ai,a->ijk", gram, a, single)
          + np.einsum("ab,aj,ai,bk,b,a->ijk", weight, a, a, a, f21, f30)
          - np.einsum("ab,aj,ak,bi,b,a->ijk", weight, a, a, a, f21, f30))

    single = hs * f21
    d3 = (np.einsum("aj,ar,is,a->ijrs", a, a, gram, single)
          - np.einsum("as,ar,ij,a->ijrs", a, a, gram, single)
          + np.einsum("ai,as,jr,a->ijrs", a, a, gram, single)
          - np.einsum("ai,aj,rs,a->ijrs", a, a, gram, single))
    wedge = np.einsum("ai,br->abir", a, a) - np.einsum("ar,bi->abir", a, a)
    d3 = d3 - 0.5 * np.einsum("ab,abir,abjs,a,b->ijrs", weight, wedge, wedge, f30, f30, optimize=True)
    return Associators(d1, d2, d3)

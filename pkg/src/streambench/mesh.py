"""Structured hexahedral mesh topology and the scatter/gather operator data.

A K*K*K box of elements at polynomial order p carries (p+1)^3 nodes per
element; coincident nodes on shared faces/edges/vertices map to one global
id on the (K*p+1)^3 lattice. The operators stay fully general (id array +
CSR), no structure is assumed by the kernels that consume them.
"""

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .core import DVector

INDEX_DTYPE = np.int32
_INT32_MAX = np.iinfo(np.int32).max


@dataclass(frozen=True)
class MeshConnectivity:
    """Element-local to global node numbering for a K^3 mesh of order p."""

    K: int
    p: int
    local_to_global: np.ndarray = field(repr=False)

    @property
    def nl(self) -> int:
        """Local (element-duplicated) DOF count, K^3 * (p+1)^3."""
        return self.local_to_global.shape[0]

    @property
    def ng(self) -> int:
        """Global (unique) DOF count, (K*p+1)^3."""
        return (self.K * self.p + 1) ** 3


@dataclass(frozen=True)
class ScatterIds:
    """Local-to-global id map; masked entries hold -1."""

    ids: np.ndarray = field(repr=False)

    @property
    def nl(self) -> int:
        return self.ids.shape[0]

    @cached_property
    def has_mask(self) -> bool:
        return bool((self.ids < 0).any())


@dataclass(frozen=True)
class GatherOp:
    """CSR of the gather operator with row blocks of bounded nonzero count."""

    ng: int
    row_starts: np.ndarray = field(repr=False)
    col_ids: np.ndarray = field(repr=False)
    block_starts: np.ndarray = field(repr=False)
    nodes_per_block: int

    @property
    def nl(self) -> int:
        return self.col_ids.shape[0]

    @property
    def n_blocks(self) -> int:
        return self.block_starts.shape[0] - 1


def build_mesh(K: int, p: int) -> MeshConnectivity:
    """Number the nodes of a structured K*K*K mesh of order-p hexahedra.

    Element e = ez*K^2 + ey*K + ex holds nodes in (i, j, k) tensor order;
    node (i, j, k) of that element is lattice point
    (ex*p + i, ey*p + j, ez*p + k), numbered lexicographically.
    """
    if K < 1 or p < 1:
        raise ValueError(f"need K >= 1 and p >= 1, got K={K}, p={p}")
    g = K * p + 1
    if g**3 > _INT32_MAX:
        raise ValueError(f"global id space (K*p+1)^3 = {g**3} overflows int32")

    npe = p + 1  # nodes per element edge
    e = np.arange(K**3, dtype=np.int64)
    ex, ey, ez = e % K, (e // K) % K, e // K**2
    node = np.arange(npe**3, dtype=np.int64)
    i, j, k = node % npe, (node // npe) % npe, node // npe**2

    ax = ex[:, None] * p + i[None, :]
    ay = ey[:, None] * p + j[None, :]
    az = ez[:, None] * p + k[None, :]
    l2g = (az * g + ay) * g + ax
    return MeshConnectivity(K=K, p=p,
                            local_to_global=l2g.ravel().astype(INDEX_DTYPE))


def build_scatter_ids(mesh: MeshConnectivity, mask=None) -> ScatterIds:
    """Scatter id map for the mesh; global ids in `mask` become -1."""
    ids = mesh.local_to_global.copy()
    if mask is not None:
        mask_ids = np.asarray(sorted(mask), dtype=np.int64)
        if mask_ids.size and (mask_ids.min() < 0 or mask_ids.max() >= mesh.ng):
            raise ValueError(f"mask ids must lie in [0, {mesh.ng})")
        masked = np.zeros(mesh.ng, dtype=bool)
        masked[mask_ids] = True
        ids[masked[ids]] = -1
    return ScatterIds(ids=ids)


def build_gather(mesh: MeshConnectivity, nodes_per_block: int = 512) -> GatherOp:
    """CSR gather operator with greedily packed, approximately balanced row blocks.

    Row r lists (ascending) every local index mapping to global id r. Blocks
    take consecutive rows while their combined nonzeros stay within
    nodes_per_block; each block but the last is maximal.
    """
    l2g = mesh.local_to_global
    ng, nl = mesh.ng, mesh.nl

    counts = np.bincount(l2g, minlength=ng)
    if counts.min() < 1:
        raise ValueError("mesh does not cover every global id")
    if counts.max() > nodes_per_block:
        raise ValueError(
            f"nodes_per_block={nodes_per_block} is below the longest row "
            f"({counts.max()} nonzeros)")

    # stable sort by global id keeps local indices ascending within a row
    col_ids = np.argsort(l2g, kind="stable").astype(INDEX_DTYPE)
    row_starts = np.zeros(ng + 1, dtype=INDEX_DTYPE)
    row_starts[1:] = np.cumsum(counts)

    block_starts = [0]
    row = 0
    while row < ng:
        limit = int(row_starts[row]) + nodes_per_block
        nxt = int(np.searchsorted(row_starts, limit, side="right")) - 1
        nxt = min(max(nxt, row + 1), ng)
        block_starts.append(nxt)
        row = nxt

    return GatherOp(ng=ng, row_starts=row_starts, col_ids=col_ids,
                    block_starts=np.asarray(block_starts, dtype=INDEX_DTYPE),
                    nodes_per_block=nodes_per_block)


def multiplicity(mesh: MeshConnectivity) -> DVector:
    """Per-global-node count of element-local copies (row lengths of the gather)."""
    return np.bincount(mesh.local_to_global,
                       minlength=mesh.ng).astype(np.float64)

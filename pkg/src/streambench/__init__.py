"""streambench: memory-streaming kernels, gather/scatter, CG, and model fitting."""

from .cg import CGResult, NotSPDError, cg_solve, dense_spd_operator, diagonal_operator
from .core import ByteAccount, DVector, bytes_moved, dvector
from .gs import bs6_gather, bs7_scatter
from .harness import (BandwidthSample, SweepError, SweepPlan, geometric_sizes,
                      run_sweep)
from .kernels import (ReductionConfig, bs1_copy, bs2_axpy, bs3_norm2, bs4_dot,
                      bs5_fused_cg_update)
from .mesh import (GatherOp, MeshConnectivity, ScatterIds, build_gather,
                   build_mesh, build_scatter_ids, multiplicity)
from .model import ModelFit, ModelFitError, efficiency_point, fit_model, w_eff
from .parallel import max_workers, num_workers, set_num_workers

__version__ = "0.1.0"

__all__ = [
    "BandwidthSample", "ByteAccount", "CGResult", "DVector", "GatherOp",
    "MeshConnectivity",
    "ModelFit", "ModelFitError", "NotSPDError", "ReductionConfig", "ScatterIds",
    "SweepError", "SweepPlan", "bs1_copy", "bs2_axpy", "bs3_norm2", "bs4_dot",
    "bs5_fused_cg_update", "bs6_gather", "bs7_scatter", "build_gather",
    "build_mesh", "build_scatter_ids", "bytes_moved", "cg_solve",
    "dense_spd_operator", "diagonal_operator", "dvector", "efficiency_point",
    "fit_model", "geometric_sizes", "max_workers", "multiplicity",
    "num_workers", "run_sweep", "set_num_workers", "w_eff",
]

"""Moving-mesh finite difference solvers for convection-diffusion equations.

Implicit Gauss-Legendre collocation time integration (temporal order 2m for
any m) of semi-discrete systems M(t) du/dt = A(t) u + f(t) arising from
central finite differences on moving meshes. The square-root-mass change of
variables makes every scheme in the family unconditionally stable whenever
the spatial discretization satisfies a dissipativity condition, which the
provided 1D and 2D discretizations do by construction.
"""

from ._kernels import BACKEND as KERNEL_BACKEND  # noqa: F401
from .bc import BcStrategy  # noqa: F401
from .collocation import CollocationScheme, build_scheme, gauss_nodes  # noqa: F401
from .disc1d import (  # noqa: F401
    boundary_values,
    build_conservative,
    build_nonconservative_halfpoint,
    build_twocell,
    check_coef_condition_1d,
)
from .disc2d import build_system_2d, check_coef_condition_2d  # noqa: F401
from .errors import (  # noqa: F401
    DegenerateDomainError,
    DegenerateExtrapolationError,
    DegenerateMeshError,
    InvalidOrderError,
    MmfdError,
    SingularSystemError,
    StepFailureError,
    TangledMeshError,
)
from .harness import (  # noqa: F401
    ErrorReport,
    RunConfig,
    convergence,
    observed_order,
    run,
    stability_stress,
)
from .integrator import (  # noqa: F401
    assemble_B,
    certify_dissipativity,
    integrate,
    step_backward_euler,
    step_collocation,
)
from .linalg import from_triplets, max_symmetric_eig, solve_sparse  # noqa: F401
from .mesh1d import MovingMesh1D, static_uniform_mesh  # noqa: F401
from .mesh2d import MovingMesh2D, static_cartesian_mesh  # noqa: F401
from .problems import (  # noqa: F401
    ExactSolution1D,
    ExactSolution2D,
    Problem1D,
    Problem2D,
    example_5_1,
    example_5_2,
    example_5_3,
    homogeneous_stress_variant,
    max_error,
)
from .system import SemiDiscreteSystem, SolutionHistory, StageContext  # noqa: F401
from .timegrid import TimeGrid  # noqa: F401

__version__ = "0.1.0"

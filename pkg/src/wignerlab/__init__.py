"""Phase-space quantum mechanics on 1-D grids.

Wigner/Weyl transforms, density matrices, metaplectic operators, Gaussian
and quantum-Bochner admissibility tests, variable Planck-parameter scans,
and Radon tomography, all discretized on dual position/momentum grids.
"""

import os as _os

__version__ = "0.1.0"


def _configure_threads():
    """Honor WIGNERLAB_THREADS before the numeric backends spin up."""
    threads = _os.environ.get("WIGNERLAB_THREADS")
    if not threads:
        return
    for var in ("OMP_NUM_THREADS", "OPENBLAS_NUM_THREADS", "MKL_NUM_THREADS"):
        _os.environ.setdefault(var, threads)


_configure_threads()

from .errors import (  # noqa: E402
    ConfigurationError,
    NormalizationError,
    NotFreeError,
    ParameterError,
    ValidationError,
    WignerlabError,
)
from .grid import (  # noqa: E402
    Grid,
    GridFunction,
    PhaseSpaceFunction,
    boundary_leak,
    dual_grid,
    make_grid,
    phase_space_grids,
)
from .interpolate import (  # noqa: E402
    fourier_shift,
    periodic_interp,
    point_interp2d,
    refine,
    shear_interp,
    tensor_interp,
)
from .transforms import eta_fourier, symplectic_fourier  # noqa: E402
from .wavefunctions import coherent_state, gaussian_wavepacket, hermite_state  # noqa: E402
from .states import (  # noqa: E402
    DensityMatrix,
    MixedStateSpec,
    OperatorMatrix,
    SpectralData,
    mix,
    operator_from_apply,
    pure_density,
    spectral_decompose,
    state_stats,
    validate_density,
)
from .wigner import (  # noqa: E402
    WignerResult,
    ambiguity,
    cross_wigner,
    marginals,
    moyal_overlap,
    reflection_wigner_check,
    wigner,
)
from .weyl import (  # noqa: E402
    displace,
    expectation,
    quantize_via_displacements,
    quantize_via_reflections,
    reflect,
    trace_from_symbol,
    twisted_product,
    twisted_product_via_convolution,
    weyl_quantize,
    weyl_symbol,
)
from .symplectic import (  # noqa: E402
    GeneratingFunction,
    MetaplecticSpec,
    WilliamsonData,
    blocks,
    chirp_matrix,
    fourier_matrix,
    free_generating_function,
    is_symplectic,
    j_matrix,
    rescale_matrix,
    metaplectic_apply,
    metaplectic_matrix,
    symplectic_eigenvalues,
    williamson,
)
from .quantumness import (  # noqa: E402
    CovarianceMatrix,
    EtaScanResult,
    GaussianStateSpec,
    KLMReport,
    covariance_matrix,
    eta_scan,
    gaussian_admissible,
    gaussian_state,
    klm_test,
    narcowich_oconnell_profile,
    quartic_derivative_witness,
    reduced_transform,
    robertson_schrodinger_checks,
    sigma_transform_at,
)
from .tomography import (  # noqa: E402
    TomogramSet,
    inverse_radon,
    pauli_pair,
    radon,
    reconstruct_density,
)
from .serialize import (  # noqa: E402
    dump_json,
    json_ready,
    load_grid_function,
    load_kernel,
    load_phase_space,
    load_tomograms,
    save_grid_function,
    save_kernel,
    save_phase_space,
    save_tomograms,
)

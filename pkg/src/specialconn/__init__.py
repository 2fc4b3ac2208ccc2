"""specialconn: exact computations for special connections on symmetric pairs.

The library works entirely over the rationals.  Its layers are

* ``exact``      -- rational matrices, subspaces, characteristic polynomials
* ``lie``        -- Lie algebras from structure constants, Killing form, series
* ``pairs``      -- involutions, symmetric pairs, isotropy, classification
* ``products``   -- special products, curvature, holonomy, Poisson transport
* ``jordan``     -- nonassociative algebras and the TKK construction
* ``catalog``    -- deterministic builders for standard examples
* ``io`` / ``cli`` -- file records and the ``specialconn`` command line
"""

from .errors import ConsistencyError, RecordError, Rejected, StructuralError
from .exact import Mat, Subspace, format_rational, is_positive_definite, nullspace, parse_rational, rational_roots
from .lie import (
    LieAlgebra,
    Representation,
    center,
    direct_sum,
    is_semisimple,
    killing,
    lower_central_series,
    matrix_lie_algebra,
    validate_lie,
)
from .pairs import (
    Involution,
    SymmetricPair,
    cartan_pair_checks,
    classify,
    decompose,
    is_cartan_involution,
    isotropy,
    split_module,
    strong_decomposition_identities,
)
from .products import (
    ProductTensor,
    candidate_space,
    curvature,
    holonomy,
    poisson_from_center,
    semi_symmetry_check,
    solve_special,
    torsion,
    transport_to_double,
    verify_special,
)
from .jordan import NonassocAlgebra, classify_algebra, tkk, tkk_pair, tkk_special_product
from . import catalog

__version__ = "0.1.0"

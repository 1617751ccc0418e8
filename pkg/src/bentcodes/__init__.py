"""Linear codes with two or three weights from quadratic bent functions over F_p."""

from .catalog import (
    FAMILIES,
    HG,
    Gold,
    Kasami,
    PlanarA,
    PlanarB,
    PlanarC,
    PlanarD,
    PlanarE,
    PolyForm,
    epsilon_predict,
    family_q,
    gold_is_bent,
    hg_build,
    hg_q,
    kasami_valid,
)
from .codes import (
    CodeReport,
    build_report,
    compare,
    defining_set,
    dimension,
    generator_matrix,
    griesmer,
    is_griesmer_optimal,
    puncture,
    theoretical_wd,
    weight_distribution,
)
from .errors import (
    FieldError,
    GuardError,
    InvalidFamilyError,
    NotQuadraticError,
    TheoryViolation,
)
from .field import Field, FieldElement, discrete_log, make_field, trace
from .quadform import (
    DefiningSet,
    QFunction,
    classify,
    gram_matrix,
    is_bent_rank,
    is_bent_walsh,
    nb_distribution,
    walsh,
    zero_set,
)

__version__ = "0.1.0"

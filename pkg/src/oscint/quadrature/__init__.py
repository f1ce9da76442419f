from .double_exponential import (
    DERule,
    de_integrate,
    de_integrate_vector,
    de_transform,
    truncation_point,
)
from .gauss_legendre import GaussLegendreRule, gauss_legendre, panel_integrate

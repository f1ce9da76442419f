from . import integrand_catalog
from .integrand import Integrand
from .integrand_catalog import CatalogEntry

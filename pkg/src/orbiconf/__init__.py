"""Coverings of finite configurations, prime configurations and orbiconfigurations."""

from .covering import (CommonCover, CoveringMap, common_cover_search, covering_translations,
                       find_coverings, lift_automorphism, polygon, project_automorphism,
                       verify_covering)
from .errors import BudgetExceeded, ConfigurationError, CoveringError, OrbiStructureError, ParseError
from .goodbad import GoodBadVerdict, classify_n2, enumerate_n2, good_search, integrality_check
from .groups import (OrbitPartition, Permutation, PermutationGroup, automorphism_group,
                     cycle_structure_check, is_semiregular, orbit_divisibility_filter, orbits,
                     subgroups)
from .incidence import (Configuration, ConfigurationParams, IncidenceStructure, LeviGraph,
                        ValidationReport, dual, find_isomorphism, from_mod_notation, levi,
                        menger_edges, params, validate)
from .orbi import (Level, OrbiIncidenceStructure, OrbiLine, Orbiconfiguration, classify,
                   levi_conjecture_scan, orbi_dual, orbi_isomorphic, orbi_levi, orbi_params,
                   quotient, verify_quotient_claims)
from .primality import (PrimalityVerdict, admissible_orders, is_prime, is_prime_general,
                        is_prime_regular)

__version__ = "0.1.0"

from pqsurf.permgroup import Permutation, FiniteGroup, Subgroup, CosetSpace, PSL2, psl2_group, subgroup_classes
from pqsurf.covers import SphericalSystem, validate_system, genus_of_cover, induced_quotient_monodromy, hurwitz_move
from pqsurf.covers import enumerate_systems, realize_classes, push_to_subgroup, outer_orbits
from pqsurf.singularities import CyclicQuotientType, Basket, hj_expansion, normalize_type, chain_data, compute_basket
from pqsurf.invariants import SurfaceInvariants, surface_invariants, twist_report
from pqsurf.fundgroup import Presentation, todd_coxeter, verify_presentation, pi1_trivial_certificate
from pqsurf.errors import PQSurfError, ValidationError, ResourceCapError, InconsistencyError
from pqsurf.params import Limits, Pi1Status, TOOL_VERSION as __version__
from pqsurf.pqsurf import PQSurf, Config, Report

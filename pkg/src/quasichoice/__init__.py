"""Indecisive choice behaviour explained by majority votes of ballots.

Quasi-choices on small grand sets, the contraction/expansion axioms, exact
s-majoritarian synthesis and the liberal/democratic representation numbers.
"""
from .core import (AlphaViolated, Ballot, BallotFamily, GrandSet, GrandSetMismatch,
                   GrandSetTooLarge, QuasiChoice, QuasiChoiceError, Relation, Share,
                   ShareOutOfRange, SizeExceeded, as_share, ballot_from_voter, max_set,
                   replicate, revealed_relation, set_max_items)
from .axioms import (AxiomWitness, Rationality, RationalityClass, check_alpha, check_gamma,
                     classify, is_freely_rationalizable)
from .represent import (SynthesisTrace, VerifyOutcome, dem_from_lib, lib_from_dem,
                        majority_choice, synth_liberal, synth_majoritarian, union_choice,
                        verify)
from .solvers import (INFINITE, AcceptanceAntichain, BoundsReport, DemLimits, DemResult,
                      acceptance_antichains, asymptotic_ratio, bounds_report, dem_number,
                      lib_number, oracle_dem, oracle_lib, sperner_bound)
from .generators import (FIXTURES, fixture, fixture_families, gen_cnk,
                         gen_cnk_democratic_family, gen_cnk_liberal_family, random_alpha)

__version__ = "0.1.0"

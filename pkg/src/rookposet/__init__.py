"""Rook monoid posets under the Bruhat-Chevalley-Renner order, with an edge
labeling and an extensional verifier for its chain and Möbius structure."""

from .instances import InstanceSpec, build_instance, build_rook, build_rook_rank_level, build_symmetric
from .poset import GradedPoset, interval, lex_first_chain, mobius, mobius_table
from .rook import Cover, CoverType, EdgeLabel, RookElement, covers_of, is_cover, label, length
from .verify import CampaignConfig, Check, Scope, run_campaign, run_checks

__all__ = [
    "CampaignConfig", "Check", "Cover", "CoverType", "EdgeLabel", "GradedPoset",
    "InstanceSpec", "RookElement", "Scope", "build_instance", "build_rook",
    "build_rook_rank_level", "build_symmetric", "covers_of", "interval", "is_cover",
    "label", "length", "lex_first_chain", "mobius", "mobius_table", "run_campaign",
    "run_checks",
]

__version__ = "0.1.0"

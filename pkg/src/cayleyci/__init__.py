"""Cayley digraphs on dihedral and cyclic groups and their CI-subset tests."""

from .grouplib import Elem, GroupAut, GroupSpec, parse_group, parse_set
from .digraph import Digraph, cayley
from .permgroup import Partition, Perm, PermGroup
from .autengine import automorphism_group, canonical_form, isomorphism
from .citester import (
    CiReport, SweepResult, is_ci, is_ci_babai, is_ci_definitional, m_dci_group_status,
    m_dci_status,
)

__version__ = "0.1.0"

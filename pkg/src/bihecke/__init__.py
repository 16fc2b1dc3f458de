"""Computational toolkit for the biHecke monoid of a finite Coxeter group."""

from .coxeter import CoxeterGroup, Element, GroupDescriptor, Order, create_group, parse_descriptor
from .errors import (BiHeckeError, DescriptorError, DomainError, InvariantViolation,
                     PreconditionError, ResourceError)

__version__ = "0.1.0"

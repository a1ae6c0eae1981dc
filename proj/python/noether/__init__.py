"""Discrete moving frames, invariant Euler-Lagrange equations and Noether conservation laws."""

from ._noether import (
    ActionKind,
    Conservation,
    Invariants,
    Lagrangian,
    NoetherError,
    ParseError,
    Path,
    Reconstruction,
    ReconstructionInput,
    action,
    adjoint,
    el_residual_max,
    euler_lagrange,
    extremal_path,
    first_integral,
    frame,
    invariants,
    maurer_cartan,
    noether_constant,
    pairing_check,
    path_from_invariants,
    reconstruct,
    solve_forward,
    syzygy_residual,
    verify,
)

__all__ = [name for name in dir() if not name.startswith("_")]

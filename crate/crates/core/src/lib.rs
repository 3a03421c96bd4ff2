//! Exact-arithmetic kernels for verifying a one-parameter family of plane
//! sextics with a cyclic symmetry and three A6 singular points.
//!
//! Everything here computes over exact domains (arbitrary-precision rationals
//! and the quadratic extension Q(w), w^2 + w + 1 = 0); no floating point is
//! used anywhere.  The crate is organised bottom-up:
//!
//! * [`exact`] — scalar domains, sparse multivariate polynomials, resultants
//!   and multivariate gcd, Sturm isolation of real roots, Smith normal form;
//! * [`curves`] — the sextic family itself: construction, the covering-curve
//!   ansatz that reconstructs it, coordinate changes, symmetry checks;
//! * [`singular`] — projective singular-point census and A_k classification
//!   via Milnor numbers computed as local intersection multiplicities;
//! * [`pencil`] — the discriminant of a pencil of vertical lines against the
//!   affine model, with its factorisation and real-fiber census;
//! * [`qforms`] — finite quadratic forms on small abelian groups
//!   (discriminant forms of A_n lattices) and their isotropic subgroups;
//! * [`fpgrp`] — finitely presented groups: coset enumeration,
//!   abelianization, multiplication tables, isomorphism checks.

pub mod curves;
pub mod exact;
pub mod fpgrp;
pub mod pencil;
pub mod qforms;
pub mod singular;

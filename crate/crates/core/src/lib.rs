//! Quivers, root systems, maximal green sequences and torsion classes for
//! Dynkin quivers, with a small exact module calculator for the
//! preprojective algebra.

pub mod error;
pub mod green;
pub mod modlab;
pub mod quiver;
pub mod roots;
pub mod stability;
pub mod torsion;
pub mod weyl;

pub use error::{Error, Result};
pub use green::{
    chain_to_mgs, complete_prefix, enumerate_mgs, validate_mgs, word_to_mgs, FailureReason,
    GreenSequence, ValidationMode, ValidationReport,
};
pub use modlab::{Field, Representation};
pub use quiver::{
    Arrow, DoubleQuiver, DynkinComponent, DynkinType, Family, Quiver, QuiverClass, RootVector,
};
pub use roots::{positive_roots, reflect, RootSystem};
pub use stability::{induced_mgs, phase_gt, CentralCharge, Charge, Rational};
pub use torsion::{
    all_torsion_classes, check_opposite, exchange_quiver, hasse_of_inclusion, LabeledDigraph,
    OppositeReport, TorsionClass,
};
pub use weyl::{
    count_maximal_chains, enumerate_maximal_chains, Chain, ChainCount, RootSet, WeylElement,
    WeylGroup,
};

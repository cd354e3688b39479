//! Combinatorial codecs for finite prefixes of i.i.d. uniform sequences.
//!
//! Two encodings of a sequence of distinct reals are implemented side by
//! side: the rank encoding onto the triangular compactum (module [`weyl`])
//! and the RSK correspondence onto pairs of Young tableaux (module
//! [`rsk`]). The [`schuetzenberger`] module provides the promotion shift
//! on recording tableaux and the nerve-based decoder, [`limit_shape`] the
//! analytic limit objects (the curve `Ω` and the arch surface), and
//! [`experiments`] seeded Monte Carlo drivers that measure decoding error
//! and shape convergence at finite `n`.

pub mod experiments;
pub mod limit_shape;
pub mod rsk;
pub mod schuetzenberger;
pub mod tableau;
pub mod weyl;

pub use rsk::RskPair;
pub use tableau::{Cell, RealTableau, Realization, StandardTableau, YoungDiagram};
pub use weyl::ZSequence;

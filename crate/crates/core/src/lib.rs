//! Classification of rational 3-tangles through Dehn coordinates of their
//! boundary arc systems on the six-punctured sphere.

pub mod canonical;
pub mod cli;
pub mod corpus;
pub mod error;
pub mod explorer;
pub mod jump;
pub mod minimization;
pub mod normal_form;
pub mod oracle;
pub mod par;
#[doc(hidden)]
pub mod search;
pub mod surface;

pub use canonical::{equivalent, representative, Branch, RepresentativeReport};
pub use explorer::{explore, Ball};
pub use error::{Error, Result};
pub use jump::{completions, has_second_move, neighbors, predict_window_words, JumpNeighbor, Variant};
pub use minimization::{
    census, descend_e1, equality_profile, is_minimal_e1, plateau, EqualityProfile, PatternCensus, Plateau,
};
pub use normal_form::{bridge_replace, find_violation, is_normal, normalize, NormalityViolation};
pub use surface::{dehn_of, realize, route_pants, weight, ArcKey, ArcSystem, DehnCoordinate, DiskSel};

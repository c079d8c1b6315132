//! Exact arithmetic of projective toric varieties over Q.
//!
//! Heights, Chow and Hilbert weights, mixed integrals and multiheights are
//! returned as [`LogLinear`] numbers `c + sum_p q_p log p`, compared with
//! certified interval arithmetic and never rounded.
//!
//! ```
//! use toric_core::toric::{normalized_height, MonomialPair};
//!
//! let cubic = MonomialPair::from_strs(&[&[0], &[1], &[2], &[3]], &["1", "4", "1/3", "1/2"]).unwrap();
//! let h = normalized_height(&cubic).unwrap();
//! assert_eq!(h.value.to_string(), "7*log(2) + 3*log(3)");
//! ```

pub mod error;
pub mod exactnum;
pub mod geom;
pub mod mixed;
pub mod roof;
pub mod toric;

pub use error::{Error, Result};
pub use exactnum::{LogLinear, Place, Prime, Rational};
pub use roof::Roof;
pub use toric::{HeightReport, MonomialPair};

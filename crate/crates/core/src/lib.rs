//! Hamming codes over small fields, their i-components, and the switching
//! construction that turns an admissible family of components into a
//! nonlinear 1-perfect code containing a prescribed short code.
//!
//! The pipeline is:
//!
//! 1. [`hamming::HammingCode::build`] the code ℍ of length n = (q^m − 1)/(q − 1);
//! 2. describe a short code Λ as a [`family::LambdaCode`] and pick columns
//!    with [`family::default_choice`];
//! 3. [`family::build_family`] lifts every λ into a component R_i + u;
//! 4. [`family::check_admissible`] and [`family::switch`] produce the code T;
//! 5. the [`verify`] oracles check perfectness, distance and embedding by
//!    brute force.
//!
//! ```
//! use perfcode::family::{self, Flavor, LambdaCode};
//! use perfcode::hamming::HammingCode;
//!
//! let code = HammingCode::build(3, 3).unwrap();
//! let lam = LambdaCode::parse_vectors(code.field(), Flavor::Ternary, &["111", "222"]).unwrap();
//! let choice = family::default_choice(&code, 0).unwrap();
//! let fam = family::build_family(&code, &choice, &lam, false).unwrap();
//! assert!(family::check_admissible(&fam).is_ok());
//! let t = family::switch(&fam).unwrap();
//! assert!(t.contains(&perfcode::FqVector::zeros(code.field(), 13)));
//! ```

pub mod components;
pub mod error;
pub mod family;
pub mod fqlin;
pub mod gf;
pub mod hamming;
pub mod io;
pub mod pg;
pub mod verify;

pub use error::{Error, Result};
pub use fqlin::{FqMatrix, FqVector};
pub use gf::Field;
pub use hamming::HammingCode;
pub use pg::PointIndex;

/// Default limit on the number of vectors any enumeration may produce.
pub const DEFAULT_CAP: u64 = 1 << 26;

/// Environment variable overriding [`DEFAULT_CAP`].
pub const CAP_ENV_VAR: &str = "PERFCODE_CAP";

/// The enumeration cap from `PERFCODE_CAP`, or [`DEFAULT_CAP`] when unset.
pub fn cap_from_env() -> Result<u64> {
    match std::env::var(CAP_ENV_VAR) {
        Ok(s) => s.trim().parse().map_err(|_| Error::Parse {
            line: 0,
            message: format!("{CAP_ENV_VAR} must be an unsigned integer, got {s:?}"),
        }),
        Err(_) => Ok(DEFAULT_CAP),
    }
}

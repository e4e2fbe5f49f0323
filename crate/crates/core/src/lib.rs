//! Unconditional stability of linear n-port networks through bounds on the
//! structured singular value `μ` of their scattering matrices.
//!
//! The guide in `book/` walks through the concepts; its code blocks run as
//! doc-tests of this crate.

pub mod analyzer;
pub mod matrix;
pub mod oracle;
pub mod scattering;
pub mod ssv;
pub mod touchstone;
pub mod twoport;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/ssv.md")]
    mod ssv {}
    #[doc = include_str!("../../../book/src/bounds.md")]
    mod bounds {}
    #[doc = include_str!("../../../book/src/sweeps.md")]
    mod sweeps {}
    #[doc = include_str!("../../../book/src/two-port.md")]
    mod two_port {}
    #[doc = include_str!("../../../book/src/touchstone.md")]
    mod touchstone {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}

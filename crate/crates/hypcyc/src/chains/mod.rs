//! Chains with exact rational coefficients and the operators acting on them.

pub mod bar;
mod chain;
pub mod elliptic;
pub mod forms;
pub mod maps;
pub mod splitting;
pub mod text;
pub mod twisted;

pub use chain::Chain;
pub use forms::{Form, FormChain, Head};
pub use maps::Section;
pub use twisted::{TwistedChain, TwistedSimplex};

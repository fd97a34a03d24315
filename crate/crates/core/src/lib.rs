pub mod agent;
pub mod error;
pub mod explorer;
pub mod families;
pub mod graph;
pub mod homotopy;
pub mod harness;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    pub mod introduction {}
    #[doc = include_str!("../../../book/src/graphs.md")]
    pub mod graphs {}
    #[doc = include_str!("../../../book/src/clusters.md")]
    pub mod clusters {}
    #[doc = include_str!("../../../book/src/homotopy.md")]
    pub mod homotopy {}
    #[doc = include_str!("../../../book/src/agent.md")]
    pub mod agent {}
    #[doc = include_str!("../../../book/src/explorer.md")]
    pub mod explorer {}
    #[doc = include_str!("../../../book/src/verification.md")]
    pub mod verification {}
}

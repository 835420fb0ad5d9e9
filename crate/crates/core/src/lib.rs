// Copyright 2026 The memverify Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! Verification strategies for pure states with a quantum memory.
//!
//! The crate computes the spectral quantities that govern how many copies a
//! verifier needs, builds the two-copy Bell strategy for graph states and
//! the dimension-expansion strategies for GHZ-like states, and simulates
//! the resulting protocols.

pub mod cli;
pub mod error;
pub mod ghz;
pub mod graph_strategy;
pub mod graphs;
pub mod montecarlo;
pub mod qcore;
pub mod strategy;

pub use error::{Error, Result};
pub use qcore::C64;

#[cfg(doctest)]
pub mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    pub mod introduction {}
    #[doc = include_str!("../../../book/src/states.md")]
    pub mod states {}
    #[doc = include_str!("../../../book/src/single_copy.md")]
    pub mod single_copy {}
    #[doc = include_str!("../../../book/src/two_copy.md")]
    pub mod two_copy {}
    #[doc = include_str!("../../../book/src/graph_states.md")]
    pub mod graph_states {}
    #[doc = include_str!("../../../book/src/ghz.md")]
    pub mod ghz {}
    #[doc = include_str!("../../../book/src/simulation.md")]
    pub mod simulation {}
    #[doc = include_str!("../../../book/src/cli.md")]
    pub mod cli {}
}

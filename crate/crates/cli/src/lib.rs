//! Command line and HTTP/JSON front end for [`ebwtlab`].
//!
//! [`api`] holds the transport-independent operations; [`cli`] and
//! [`server`] are thin adapters over it.

pub mod api;
pub mod cli;
pub mod config;
pub mod server;

//! Exact spectracones, row cones and the row Hadamard conic test for
//! invertible rational matrices.
//!
//! ```
//! use spectracone_core::perron::{PerronContext, Relation};
//! use spectracone_core::ratmath::RationalMatrix;
//!
//! let s = RationalMatrix::parse("1 1 0; 1 -.5 1; 1 -.5 -1").unwrap();
//! let ctx = PerronContext::new(s).unwrap();
//! assert_eq!(ctx.spectracone().extremal_rays().len(), 4);
//! assert_eq!(ctx.classify().unwrap().relation, Relation::IncomparableIntersecting);
//! ```

pub mod cones;
pub mod perron;
pub mod ratmath;
pub mod section;
pub mod transforms;

//! Jack measures on partitions with a bounded number of rows, and their
//! comparison with traceless Gaussian β-ensembles.

pub mod alpha;
pub mod asymptotics;
pub mod cli;
pub mod ensemble;
pub mod error;
pub mod logspace;
pub mod partition;
pub mod quadrature;
pub mod samplers;
pub mod stats;
pub mod tableaux;
pub mod weights;

pub use alpha::{Alpha, Weight};
pub use error::{Error, Result};
pub use logspace::{LogSum, LogWeight};
pub use partition::{count_partitions, enumerate_partitions, hook_product, Cell, Partition};

//! Constructions that enlarge certificates: the cyclic zipper and Xu's product.

mod assembly;
mod product;
mod zip;

pub use assembly::{assemble_lifted, MAX_ASSEMBLY_CANDIDATES};
pub use product::{least_prime_divisor, xu_bound, xu_product, ProductRecipe};
pub use zip::{zip, zip_odd_position, zip_twice, LiftedBlock, ZipRecipe};

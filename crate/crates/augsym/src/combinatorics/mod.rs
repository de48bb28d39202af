//! Partition and subdivision machinery.
//!
//! Integer partitions drive everything else: subdivisions of a multiset are
//! enumerated by partitioning the multiplicity of each distinct element and
//! inserting the pieces, so no subdivision is ever generated twice and the
//! number of set partitions it stands for comes from a closed product
//! formula instead of brute-force enumeration.

mod multiset;
mod partitions;
mod set_partitions;
mod subdivisions;

pub use multiset::Multiset;
pub use partitions::{
    bell_number, d_lambda, factorial, integer_partitions, multinomial, IntegerPartition,
};
pub use set_partitions::{set_partitions, SetPartitions, MAX_SET_PARTITION_SIZE};
pub(crate) use subdivisions::{raw_subdivisions, RawSubView, RawSubs};
pub use subdivisions::{stats, subdivision_of_set_partition, subdivisions, Subdivision};

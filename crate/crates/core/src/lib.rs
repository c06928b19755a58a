pub mod algebra;
pub mod clifford;
pub mod construction;
pub mod fixture;
pub mod hodge;
pub mod linalg;
pub mod report;
pub mod scalars;

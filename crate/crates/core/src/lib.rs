pub mod arrangement;
pub mod cli;
pub mod diagram;
pub mod feasibility;
pub mod flober;
pub mod json;
pub mod linalg;
pub mod roots;

//! Exact linear algebra for nets of quadrics, symplectic monads and Barth
//! octuples on P³ and P².

pub mod forms;
pub mod frame;
pub mod io;
pub mod linalg;
pub mod net;
pub mod par;
pub mod plane;
pub mod report;
pub mod slice;
pub mod workbench;

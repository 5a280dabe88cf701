//! p-adic triangulation toolkit: discrete polytopes, p-adic simplexes and
//! complexes, monomial cells, dispatch and lifting.

pub mod cells;
pub mod complex;
pub mod direction;
pub mod dispatch;
pub mod dot;
pub mod gamma;
pub mod io;
pub mod lp;
pub mod oracle;
pub mod padic;
pub mod rat;

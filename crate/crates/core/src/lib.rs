pub mod algmat;
pub mod extint;
pub mod ffpoly;
pub mod flock;
pub mod groebner;
pub mod matroid;
pub mod pipeline;
pub mod report;
pub mod set;
pub mod toric;
pub mod valmat;

pub mod brace;
pub mod gf;
pub mod group;
pub mod holomorph;
pub mod io;
pub mod matgrp;
pub mod oracle;
pub mod psl25;
pub mod sampling;
pub mod theorem_a;

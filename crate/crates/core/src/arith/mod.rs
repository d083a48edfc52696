pub mod field;
pub mod fp;
pub mod integer;
pub mod poly;
pub mod qfactor;
pub mod roots;

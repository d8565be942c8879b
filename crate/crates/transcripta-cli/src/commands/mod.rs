pub mod group;
pub mod henon;
pub mod measures;
pub mod symbolize;

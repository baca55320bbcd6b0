pub mod bounds;
pub mod cli;
pub mod error;
pub mod geodesy;
pub mod mesh;
pub mod roots;
pub mod spaceform;
pub mod surfaces;
pub mod sweep;
pub mod verify;

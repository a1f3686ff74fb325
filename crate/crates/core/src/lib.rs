pub mod cli;
pub mod dist;
pub mod error;
pub mod game;
pub mod measures;
pub mod orders;
pub mod params;
pub mod pattern;
pub mod pca;
pub mod stream;
pub mod symbol;
pub mod verify;

pub mod tag;
pub mod recognizer;
pub mod program;
pub mod encoding;
pub mod gadgets;
pub mod format;
pub mod reduction;

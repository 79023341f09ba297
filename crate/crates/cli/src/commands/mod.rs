pub mod bing;
pub mod cantor;
pub mod extend;
pub mod star;

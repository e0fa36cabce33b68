pub use fusionchar_core;

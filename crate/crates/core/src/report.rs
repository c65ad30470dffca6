//! Output formatting (placeholder).

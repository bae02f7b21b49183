//! Phase integrals (placeholder).

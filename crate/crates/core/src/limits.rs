/// Desk-scale guards shared by the enumeration routines.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest admissible number of elements of an extension field GF(q^n).
    pub max_extension_size: u64,
    /// Largest admissible number of hyperplanes (equivalently points) of an ambient space.
    pub max_hyperplanes: u64,
    /// Largest field order for which addition and multiplication tables are built.
    pub max_field_order: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_extension_size: 1 << 20,
            max_hyperplanes: 1_000_000,
            max_field_order: 1024,
        }
    }
}

/// Size limits guarding the exponential parts of the engine.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    /// Maximum number of subspaces an exhaustive enumeration may visit.
    pub max_subspaces: u128,
    /// Maximum tensor dimension n^d of any degree built by a model.
    pub max_tensor_dim: usize,
    /// Maximum number of items a filtered system may grow to under saturation.
    pub max_system_items: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_subspaces: 1_000_000,
            max_tensor_dim: 1_000_000,
            max_system_items: 4096,
        }
    }
}

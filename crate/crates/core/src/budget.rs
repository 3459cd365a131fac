//! Search limits.

/// Bounds that turn every existence statement into a terminating search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBudget {
    pub max_prime: u64,
    pub max_exponent: u32,
    pub max_prime_pairs: usize,
    pub precision_cap_bits: u32,
    pub enumeration_cap: usize,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            max_prime: 100_000,
            max_exponent: 64,
            max_prime_pairs: 200,
            precision_cap_bits: 4096,
            enumeration_cap: 1_000_000,
        }
    }
}

impl SearchBudget {
    pub fn with_max_prime(mut self, max_prime: u64) -> Self {
        self.max_prime = max_prime;
        self
    }

    pub fn is_valid(&self) -> bool {
        self.max_prime > 0
            && self.max_exponent > 0
            && self.max_prime_pairs > 0
            && self.precision_cap_bits > 0
            && self.enumeration_cap > 0
    }
}

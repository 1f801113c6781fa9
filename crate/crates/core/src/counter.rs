/// Tally of real multiplications performed inside a counted scope.
///
/// Counters are passed explicitly to the `*_counted` product variants; a
/// disabled counter selects the fast, uncounted product path.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ProductCounter {
    products: u64,
    enabled: bool,
}

impl ProductCounter {
    pub fn new() -> Self {
        ProductCounter { products: 0, enabled: true }
    }

    /// A counter that records nothing.
    pub fn disabled() -> Self {
        ProductCounter { products: 0, enabled: false }
    }

    pub fn is_enabled(&self) -> bool {
        self.enabled
    }

    pub fn add(&mut self, n: u64) {
        if self.enabled {
            self.products += n;
        }
    }

    pub fn products(&self) -> u64 {
        self.products
    }
}

impl Default for ProductCounter {
    fn default() -> Self {
        Self::new()
    }
}

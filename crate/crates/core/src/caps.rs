//! Enumeration caps.
//!
//! Brute-force routines refuse inputs whose enumeration would explode. The
//! defaults are sized for CI; `PF_CAP` raises or lowers both caps, but never
//! past [`HARD_LIMIT`].

/// Absolute upper bound on any enumeration size.
pub const HARD_LIMIT: usize = 16;

/// Default largest `m` for which all of `S_m` is enumerated.
pub const DEFAULT_SYM_CAP: usize = 9;

/// Default largest `2n` for which perfect matchings are enumerated.
pub const DEFAULT_PFAFF_CAP: usize = 16;

pub const CAP_ENV: &str = "PF_CAP";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    pub sym: usize,
    pub pfaff: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            sym: DEFAULT_SYM_CAP,
            pfaff: DEFAULT_PFAFF_CAP,
        }
    }
}

impl Caps {
    /// Caps with both limits overridden by `value`, clamped to [`HARD_LIMIT`].
    pub fn uniform(value: usize) -> Self {
        let v = value.min(HARD_LIMIT);
        Caps { sym: v, pfaff: v }
    }

    /// Defaults, overridden by `PF_CAP` when it holds a valid integer.
    pub fn from_env() -> Self {
        std::env::var(CAP_ENV)
            .ok()
            .and_then(|v| v.trim().parse::<usize>().ok())
            .map(Caps::uniform)
            .unwrap_or_default()
    }
}

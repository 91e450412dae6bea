// Pre-build guard: the profile constants must satisfy the closure arithmetic
// for every clique number we claim to support, or the augmentation could run
// out of budget or palette at runtime. Mirrors AugmentConfig::check_closure
// on purpose — this copy has no access to the crate being built.

fn ceil_log2(x: u64) -> u32 {
    if x <= 1 {
        0
    } else {
        64 - (x - 1).leading_zeros()
    }
}

fn adaptive_k(m: u64) -> u64 {
    ceil_log2(m + 1) as u64
}

fn check(omega: u64, quota: u64, budget: u64, palette: u64) {
    assert!(quota > omega, "omega {omega}: quota {quota} must exceed omega");
    let t_max = (omega * budget - 1) / (quota - omega);
    let k_max = adaptive_k(t_max + 1);
    assert!(
        budget >= quota + k_max,
        "omega {omega}: budget {budget} < quota {quota} + k_max {k_max}"
    );
    assert!(
        palette >= budget + k_max,
        "omega {omega}: palette {palette} < budget {budget} + k_max {k_max}"
    );
    assert!(
        palette <= 7 * omega,
        "omega {omega}: palette {palette} exceeds 7*omega"
    );
}

fn main() {
    println!("cargo:rerun-if-changed=build.rs");
    check(2, 10, 12, 14);
    for omega in 3..=1_000_000u64 {
        let l = ceil_log2(omega * omega) as u64;
        check(omega, omega + 8, omega + l + 8, omega + 2 * l + 8);
    }
}

// debug scratch
use selmer2::orbits::census::*;
fn main() {
    let t0 = std::time::Instant::now();
    let rows = ff_orbit_census(1, 3, None).unwrap();
    println!("{} separable quartics over F_3 in {:?}", rows.len(), t0.elapsed());
    let mut all_const = true;
    for r in &rows {
        if r.v_size as u64 != so4_order(3) { all_const = false; println!("MISMATCH {:?}", r); }
        if r.orbit_count != r.predicted_orbits { println!("ORBIT MISMATCH {:?}", r); }
    }
    println!("all |V_f| = {} : {}", so4_order(3), all_const);
    println!("example: {}", rows[0].to_csv());
}

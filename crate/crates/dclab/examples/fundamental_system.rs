//! The solutions v0 (regular) and v_inf (decaying) of the critical channel and their constants.

use dclab::homogeneous::{build_fundamental_system, wronskian_real, Coupling};

fn main() -> dclab::Result<()> {
    let nu: f64 = std::env::args().nth(1).map_or(Ok(0.9), |s| s.parse()).unwrap_or(0.9);
    let fs = build_fundamental_system(&Coupling::critical(nu, 1)?)?;
    println!("nu = {nu}, B = {:.17}", fs.exponent());
    println!("Wronskian W(v0, v_inf) = {:.17e}", fs.w0_inf());
    println!("q = ({:.17e}, {:.17e})  [v0 ~ q r^B]", fs.q_plus(), fs.q_minus());
    let lead = fs.singular_lead();
    println!("leading coefficient of v_inf = ({:.17e}, {:.17e})  [v_inf ~ lead r^-B]", lead[0], lead[1]);
    println!("{:>10} {:>14} {:>14} {:>14} {:>14} {:>12}", "r", "v0+", "v0-", "v_inf+", "v_inf-", "W drift");
    for r in [1e-8, 1e-4, 0.01, 0.3, 1.0, 3.0, 10.0, 30.0] {
        let (v0, vi) = (fs.v0(r)?, fs.v_inf(r)?);
        let drift = (wronskian_real(v0, vi) - fs.w0_inf()).abs() / fs.w0_inf().abs();
        println!("{r:>10.1e} {:>14.6e} {:>14.6e} {:>14.6e} {:>14.6e} {drift:>12.1e}", v0[0], v0[1], vi[0], vi[1]);
    }
    Ok(())
}

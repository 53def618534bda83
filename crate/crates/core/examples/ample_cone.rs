// Ample cone of the blow-up of P^2 at a point, in generic and Picard coordinates.

use toric_vsit::ample::{ample_inequalities, is_ample, AmpleCone};
use toric_vsit::divisor::{picard_basis, Divisor};
use toric_vsit::fan::parse_fan;

fn main() -> toric_vsit::Result<()> {
    let fan = parse_fan(include_str!("../fixtures/bl_pt_p2.json"))?;

    println!("ampleness in the generic coefficients a0..a3:");
    for f in ample_inequalities(&fan) {
        println!("  {f} > 0");
    }

    // rays 2 and 3 span cone 2, so a0 and a1 are coordinates on Pic
    let cone = AmpleCone::new(&fan, picard_basis(&fan, 2)?)?;
    println!("in Picard coordinates:");
    for f in cone.facet_forms() {
        println!("  {f} > 0");
    }
    for r in cone.nef().rays() {
        println!("  nef ray {r}");
    }

    for d in [[7, 2, 0, 0], [2, 2, 0, 0], [3, 0, 1, 1]] {
        let d = Divisor::from_ints(&d);
        println!("{} ample: {}", d.0, is_ample(&fan, &d)?);
    }
    Ok(())
}

// Primitive collections of the blown-up Hirzebruch surface, their
// destabilizing one-parameter subgroups, and the primitive relations.

use toric_vsit::fan::{parse_fan, primitive_collections, state_sets};
use toric_vsit::instability::{destabilizer, positive_multiple, primitive_relation};

fn main() -> toric_vsit::Result<()> {
    let fan = parse_fan(include_str!("../fixtures/bl_pt_hirzebruch.json"))?;
    for c in primitive_collections(&fan) {
        let lambda = destabilizer(&fan, c)?;
        let relation = primitive_relation(&fan, c)?;
        let parallel = positive_multiple(&lambda.neg(), &relation);
        println!(
            "{c}: destabilizer {lambda}, relation {relation}, -destabilizer ~ relation: {parallel}"
        );
    }
    let family = state_sets(&fan);
    println!("{} state sets:", family.len());
    for s in family {
        print!(" {s}");
    }
    println!();
    Ok(())
}

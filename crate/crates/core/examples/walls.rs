// Walls of the blown-up Hirzebruch surface in Picard coordinates a2, a3, a4.

use toric_vsit::ample::AmpleCone;
use toric_vsit::divisor::picard_basis;
use toric_vsit::fan::{parse_fan, RaySet};
use toric_vsit::instability::PotentialTable;
use toric_vsit::walls::{probe_type_two, WallAtlas};

fn main() -> toric_vsit::Result<()> {
    let fan = parse_fan(include_str!("../fixtures/bl_pt_hirzebruch.json"))?;
    let table = PotentialTable::build(&fan)?;
    let cone = AmpleCone::new(&fan, picard_basis(&fan, 0)?)?;
    let atlas = WallAtlas::build(&table, &cone);

    println!("type one walls:");
    for w in &atlas.type_one {
        println!("  {w}");
    }

    let z = |s: &[usize]| RaySet::from_indices(s.iter().copied());
    for (a, b) in [(z(&[3]), z(&[2, 4])), (z(&[1]), z(&[4]))] {
        if let Some(w) = atlas.type_two_between(&table, a, b) {
            println!("type two wall between {a} and {b}: {}", w.poly);
        }
    }

    let crossing = probe_type_two(&atlas, &cone, 200, 7)
        .iter()
        .filter(|&&b| b)
        .count();
    println!(
        "{} type two walls, {} seen to change sign on 200 random ample divisors",
        atlas.type_two.len(),
        crossing
    );
    Ok(())
}

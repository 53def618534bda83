// Chamber signatures on the blown-up Hirzebruch surface: two divisors on
// opposite sides of a type-two wall that does not change the stratification,
// and a triple across a type-one wall that does.

use toric_vsit::ample::AmpleCone;
use toric_vsit::divisor::picard_basis;
use toric_vsit::fan::parse_fan;
use toric_vsit::instability::PotentialTable;
use toric_vsit::linalg::QVec;
use toric_vsit::stratify::{classify_variation, stratify};
use toric_vsit::walls::{chamber_signature, WallAtlas};

fn main() -> toric_vsit::Result<()> {
    let fan = parse_fan(include_str!("../fixtures/bl_pt_hirzebruch.json"))?;
    let table = PotentialTable::build(&fan)?;
    let cone = AmpleCone::new(&fan, picard_basis(&fan, 0)?)?;
    let atlas = WallAtlas::build(&table, &cone);

    let pairs = [
        ([430, 960, 570], [430, 955, 570]),
        ([30, 92, 70], [30, 99, 70]),
        ([45, 65, 55], [450, 775, 550]),
        ([450, 775, 550], [45, 80, 55]),
    ];
    for (a, b) in pairs {
        let da = cone.basis().embed(&QVec::from_ints(&a))?;
        let db = cone.basis().embed(&QVec::from_ints(&b))?;
        let (sa, sb) = (
            chamber_signature(&atlas, &da),
            chamber_signature(&atlas, &db),
        );
        let variation = classify_variation(&stratify(&table, &da)?, &stratify(&table, &db)?);
        println!("{a:?} -> {b:?}: {variation}");
        for i in sa.differences(&sb) {
            println!("    {} : {} -> {}", atlas.slots[i].poly, sa.0[i], sb.0[i]);
        }
    }
    Ok(())
}

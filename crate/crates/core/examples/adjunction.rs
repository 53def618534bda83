// P^2 and a weighted fan with the same combinatorics: the fans are amply
// equivalent, so ample divisors pull back and stratifications correspond.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use toric_vsit::ample::AmpleCone;
use toric_vsit::divisor::picard_basis;
use toric_vsit::fan::{check_amply_equivalent, parse_fan, RayBijection};
use toric_vsit::instability::PotentialTable;
use toric_vsit::stratify::adjunction_check;

fn main() -> toric_vsit::Result<()> {
    let p2 = parse_fan(include_str!("../fixtures/p2.json"))?;
    let weighted = parse_fan(include_str!("../fixtures/p2_weighted.json"))?;
    let psi = RayBijection::identity(3);
    println!(
        "amply equivalent: {}",
        check_amply_equivalent(&p2, &weighted, &psi)?
    );

    let (t1, t2) = (
        PotentialTable::build(&p2)?,
        PotentialTable::build(&weighted)?,
    );
    let cone = AmpleCone::new(&weighted, picard_basis(&weighted, 0)?)?;
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..5 {
        let d2 = cone.sample(&mut rng, 20);
        println!(
            "D2 = {}: stratifications correspond: {}",
            d2.0,
            adjunction_check(&t1, &t2, &psi, &d2)?
        );
    }
    Ok(())
}

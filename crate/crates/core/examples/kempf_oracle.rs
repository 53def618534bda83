// The instability engine on a diagonal action given only by weights and an
// inner product, then the same comparison on a toric fan.

use toric_vsit::divisor::Divisor;
use toric_vsit::fan::{parse_fan, RaySet};
use toric_vsit::instability::{kempf_oracle, PotentialTable, WeightedAction};
use toric_vsit::linalg::{QMat, QVec};

fn main() -> toric_vsit::Result<()> {
    // a 2-torus acting on C^3 with weights (1,0), (0,1), (-1,-1)
    let weights = QMat::from_ints(&[vec![1, 0], vec![0, 1], vec![-1, -1]]);
    let action = WeightedAction::new(weights, QMat::identity(2))?;
    let chi = QVec::from_ints(&[1, 1]);
    for s in [RaySet::from_indices([0]), RaySet::from_indices([0, 1])] {
        let r = action.kempf_oracle(s, &chi)?;
        println!("S = {s}: adapted {} with norm2 {}", r.coords, r.norm2);
    }

    let fan = parse_fan(include_str!("../fixtures/bl_pt_p2.json"))?;
    let table = PotentialTable::build(&fan)?;
    let d = Divisor::from_ints(&[7, 2, 0, 0]);
    for &s in table.state_sets() {
        let fast = table.adapted_ops(s, &d)?;
        let (slow, n2) = kempf_oracle(&fan, s, &d)?;
        assert_eq!((fast.lambda.clone(), fast.norm2.clone()), (slow, n2));
        println!("{s}: lambda {} norm2 {}", fast.lambda, fast.norm2);
    }
    Ok(())
}

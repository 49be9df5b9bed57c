//! Classes of line bundles on P1 and P1 x P1 over the standard bases.

use schober::flober::{curve_class, reduce_p1, reduce_p1xp1, LineBundleClass};

fn main() {
    for i in -3..=4 {
        let [a, b] = reduce_p1(i);
        println!("[L({i})] = {a}[L(0)] + {b}[L(1)]");
    }
    let v = reduce_p1xp1(2, -1);
    println!("[L0(2,-1)] = {:?}", v.iter().map(|x| x.to_string()).collect::<Vec<_>>());
    let plus = LineBundleClass::Plus(5);
    let coords: Vec<String> = plus.coordinates().iter().map(|x| x.to_string()).collect();
    println!("{plus} has coordinates [{}]", coords.join(", "));
    let c = curve_class(0);
    println!("[O_C] = {}[L(0)] + {}[L(1)]", c[0], c[1]);
}

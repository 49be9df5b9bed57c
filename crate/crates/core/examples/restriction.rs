//! Parabolic and Levi root sets of every face, and the local arrangements
//! at a wall.

use schober::roots::RootDatum;

fn main() {
    let datum = RootDatum::type_a(2).unwrap();
    let dict = datum.cell_dictionary();
    for cell in &dict.cells {
        let show = |rs: &[schober::roots::Root]| rs.iter().map(|r| r.to_string()).collect::<Vec<_>>().join(" ");
        println!(
            "{:<4} dim {}  parabolic [{}]  levi [{}]",
            if cell.face.is_empty() { "()" } else { &cell.face },
            cell.dim,
            show(&cell.parabolic),
            show(&cell.levi)
        );
    }

    let arr = datum.coroot_arrangement();
    let wall = arr.enumerate_faces().faces_of_dim(1)[0];
    let signs = arr.enumerate_faces().face(wall).signs.clone();
    let (sub, quotient) = datum.restriction_arrangements(&signs).unwrap();
    println!("at {signs}: {} hyperplane(s) through the face, quotient of dim {}", sub.len(), quotient.dim());
}

fn main() {
    let t = fuglab_core::disk::zero_table(6).unwrap();
    let want = [
        3.8317059702075123, 7.0155866698156187, 10.173468135062722,
        13.323691936314223, 16.470630050877633, 19.615858510468242,
    ];
    for (i, (&z, &w)) in t.zeros.iter().zip(&want).enumerate() {
        println!("n={}: got {:.15} want {:.15} err {:.3e}  J1(got)={:.3e}",
                 i + 1, z, w, (z - w).abs(), fuglab_core::disk::bessel_j1(z));
    }
}

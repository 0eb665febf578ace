use num_complex::Complex64;
use wirtinger_core::special::gamma_fn;

// (re s, im s, re Gamma(s), im Gamma(s)) from a 30-digit reference evaluation.
const TABLE: [(f64, f64, f64, f64); 40] = [
    (-3.523, -6.983, 9.6057630010136473558e-9, 1.0472144096734892149e-8),
    (3.019, -8.551, 5.728162346435550197e-4, -6.2503920574666374996e-4),
    (0.718, -2.686, 4.3413143751151047282e-2, -1.4244392816861252055e-2),
    (-8.84, 0.149, -1.7118810955633729962e-5, 6.0219879315049447417e-6),
    (-9.25, -1.327, -1.3038447058824866836e-7, 1.0332825837948509599e-7),
    (-8.603, -8.186, -7.5564651514452198583e-15, -1.4112126643720587493e-15),
    (-1.51, 6.537, -1.2647051604620325714e-6, 1.4729329251531083448e-6),
    (-7.524, -5.535, 5.2976439908515451513e-11, 4.6989669381407390997e-11),
    (2.549, 8.954, 8.0692257484278602688e-5, 1.5785445249992097345e-4),
    (1.542, -2.066, 1.4452550108478304642e-1, -1.5909945464535398829e-1),
    (9.525, -9.068, -1.5649569885586904749e+3, -1.7224018356294333035e+3),
    (7.169, -4.208, -1.0646355258304698245e+2, -2.6317119884592675424e+2),
    (-7.115, -7.644, 4.7708530225133311833e-13, 9.4677246848593613652e-13),
    (-3.83, 6.323, -2.9471976342158127913e-8, -9.0574106906901837066e-9),
    (-6.385, 1.632, 2.7945656778667187472e-5, 1.1315870999722425742e-5),
    (2.778, -2.552, -3.9614747254905311507e-1, -2.8742161811155707161e-1),
    (0.955, -8.744, -5.2219399742556173337e-7, 7.2673793708247794207e-6),
    (-8.808, -5.881, -1.4466486475707991454e-12, -8.7644681285904921722e-14),
    (3.608, -1.448, -3.3984813286325562408e-1, -2.6922780046486484329),
    (-3.717, 1.711, -6.5741290506052017937e-4, 2.4907977007360584529e-3),
    (-0.936, -4.005, 3.6054557473758114278e-4, 5.0047620942698681031e-4),
    (5.888, 3.98, 1.8913412149151868333e+1, 1.7199613333782218278e+1),
    (-5.118, 1.488, -3.8696693134262223063e-4, -2.9147157797897935732e-4),
    (0.504, 7.503, 4.279134580389026636e-6, 1.8754773896902563698e-5),
    (4.589, -4.241, 1.8706891171994579107, -5.5462233586298247402e-1),
    (9.603, -7.639, 2.7921816786157571168e+3, 7.7042543901218807334e+3),
    (-1.638, 5.143, 1.9409929778068914389e-5, -1.0717140847193199231e-5),
    (-6.96, -0.221, -5.3957357045934570601e-4, -7.0744990930605504e-4),
    (-9.216, 3.364, -3.3068752159256151253e-10, 3.5251973975566601751e-10),
    (5.291, 1.461, -2.0401628674314731776e+1, 2.2224511407363892252e+1),
    (7.51, -3.725, 3.1243596091713185164e+2, -6.714479137017963022e+2),
    (3.906, 1.887, -2.4114456167439179769, 2.1803259717586315508),
    (1.598, -0.876, 6.470009755913785064e-1, -1.1690369443311342056e-1),
    (6.799, 8.894, 2.8643022358436681548, -1.5023284867530199121),
    (-0.518, 3.283, 1.8404228917559169352e-3, -3.8330606592810160828e-3),
    (-8.787, 4.03, 7.0379231056436922856e-11, -1.9446409372105793571e-10),
    (2.943, 9.862, -1.1025587430495497253e-4, -6.6534802571749668315e-5),
    (6.438, -4.308, -9.2654929994397597082, -5.9979993665224810006e+1),
    (-2.284, 3.373, -9.7175574371415227115e-6, 3.2713017485708588257e-4),
    (-9.549, -0.766, -2.1099981231956015298e-8, -4.5552320784220054821e-7),
];

#[test]
fn gamma_on_the_test_strip() {
    for (re, im, gr, gi) in TABLE {
        let want = Complex64::new(gr, gi);
        let got = gamma_fn(Complex64::new(re, im)).unwrap();
        let rel = (got - want).norm() / want.norm();
        assert!(rel < 1e-13, "s = {re}+{im}i: rel {rel:e}");
    }
}

//! Special functions against high-precision reference values computed
//! independently (40-digit arithmetic), rounded to 20 digits.

#![allow(
    clippy::excessive_precision,
    clippy::approx_constant,
    clippy::type_complexity
)]

use num_complex::Complex64;
use ptmorse::specfun::{kummer_1f1, laguerre};

fn c(v: [f64; 2]) -> Complex64 {
    Complex64::new(v[0], v[1])
}

/// (a, b, z, ₁F₁(a; b; z))
const KUMMER: &[([f64; 2], [f64; 2], [f64; 2], [f64; 2])] = &[
    ([0.3, 0.1], [1.5, 0.0], [0.0, 0.0], [1.0, 0.0]),
    (
        [2.5, 0.0],
        [2.5, 0.0],
        [1.0, 0.0],
        [2.7182818284590452354, 0.0],
    ),
    (
        [-1.0, 0.0],
        [2.0, 0.0],
        [0.8, 0.0],
        [0.5999999999999999778, 0.0],
    ),
    (
        [0.5, 0.0],
        [1.5, 0.0],
        [-10.0, 0.0],
        [0.28024739050664274064, 0.0],
    ),
    (
        [1.25, 0.0],
        [0.5, 0.0],
        [-8.0, 3.0],
        [-0.025786220533208548319, -0.022326565806124722882],
    ),
    (
        [-2.3, 1.1],
        [3.7, -0.4],
        [-6.0, -7.0],
        [20.84192794519385496, 10.540840719386317326],
    ),
    (
        [0.7, 0.0],
        [1.7, 0.0],
        [9.5, 0.0],
        [1021.4115164089897393, 0.0],
    ),
    (
        [-3.5, 0.0],
        [0.5, 0.0],
        [4.0, 0.0],
        [3.503300645010486712, 0.0],
    ),
    (
        [1.0, 2.0],
        [2.0, -1.0],
        [0.0, 10.0],
        [-0.06828652705498162612, -0.0096102767837708170557],
    ),
    (
        [0.25, 0.0],
        [1.2, 0.0],
        [-30.0, 0.0],
        [0.38052019457518551671, 0.0],
    ),
    (
        [2.2, -0.3],
        [0.6, 0.0],
        [20.0, -5.0],
        [86068405306.825475772, 11356638955.39563305],
    ),
    (
        [-4.5, 0.0],
        [-0.499, 0.0],
        [3.0, 1.0],
        [15.901168879838388916, 48.097121960293582216],
    ),
    (
        [-0.380963571921451, 0.23908954432198382],
        [2.3687951388779136, 0.0],
        [2.209723918263259, 0.1656500479621165],
        [0.50271460104854375264, 0.19229151489875616723],
    ),
    (
        [1.0390617617344153, 0.0],
        [2.3436471332335924, 0.0],
        [5.677613785255897, -4.3381019794038505],
        [-25.833931146541127718, 9.3082744332504961115],
    ),
    (
        [-0.37604107535347175, 0.0],
        [3.1910165672898554, 0.0],
        [-0.2621970192834482, -0.6647742754820518],
        [1.0338703133870597617, 0.075162639113443063218],
    ),
    (
        [-2.064455890678282, -1.8796696431008457],
        [1.7662080922316707, 0.0],
        [3.9620217803744713, 4.80717394235935],
        [-76.294282039225652087, -1.1174285629282368585],
    ),
    (
        [-0.0018147823456668988, 0.6497981275614726],
        [3.343047867232426, 0.0],
        [3.386833686138975, -7.789259262823677],
        [2.9397289681049708634, -1.8469737912132355406],
    ),
    (
        [-2.1626727871367555, 0.0],
        [2.903082851157947, 0.0],
        [7.683924814538862, -6.645498536385917],
        [-1.7604327457764930145, -5.4942019593477720507],
    ),
    (
        [3.664339066558508, 0.0],
        [1.2248080567020443, 0.0],
        [-5.596955377933315, 0.694239297322474],
        [0.012302140915702340806, 0.0058229830404550628815],
    ),
    (
        [-0.8206048953657508, 0.0],
        [3.9368521216479238, 0.0],
        [-3.717609841724593, -0.3549414608317772],
        [1.732814169439322127, 0.066634684691426109084],
    ),
    (
        [-0.7195926452850996, 0.0],
        [1.382662154687024, 0.0],
        [5.560167588276646, -0.46139039637816937],
        [-4.612525842175888857, 1.0914030755916344853],
    ),
    (
        [1.4566195344504793, 0.0],
        [4.929350748010667, 1.0780879894187176],
        [-5.745633203181798, -5.163028007448773],
        [0.20368453910802298056, -0.10794177937856508592],
    ),
    (
        [-0.6339550620286323, -1.1485373079636423],
        [4.348802923116531, 1.8994282425466626],
        [-11.883869858283841, -1.4732755906618669],
        [0.94627559391737548559, 2.8000047765440711361],
    ),
    (
        [-2.5015411141947137, 0.0],
        [0.4021175380695473, -1.4145655866490792],
        [-0.44035630567412976, 3.0678880483041846],
        [10.611602981226387186, -6.0847554100983907306],
    ),
    (
        [-1.3683565956181605, 0.0],
        [0.5565487655443133, 0.0],
        [0.1262666080428812, -0.13672329505486225],
        [0.68863032059162264453, 0.32601476587102339932],
    ),
    (
        [0.977193859410769, -1.491115630890886],
        [4.195324298426076, -1.4570481816969614],
        [-1.2430132034195838, -1.807832509584676],
        [0.41801239678724041087, -0.055913202756458087924],
    ),
    (
        [3.2673898475398637, 0.0],
        [3.6818766304183246, 0.0],
        [6.292368882563004, -5.32583199015721],
        [123.6125768648154156, 301.03506559469072842],
    ),
    (
        [-0.13987030961905678, 0.0],
        [0.6984304705517506, -1.8452141132248694],
        [0.8054182836911034, 2.745172468010834],
        [1.1367011502292725738, -0.051064019292132808813],
    ),
    (
        [-1.9441488134375042, 1.2948713870294108],
        [1.608489663126738, 0.0],
        [1.503990859530651, -0.19672336823909806],
        [-0.68229058615893212045, 0.38742972411182758047],
    ),
    (
        [1.2280607731580657, 0.0],
        [1.545053084340104, 0.0],
        [-8.152642990739757, -3.7835624406136357],
        [0.019199577516797219461, -0.013018593055630058761],
    ),
    (
        [-0.7085875007089664, 0.0],
        [1.0460181217895224, 0.0],
        [-0.7136752309263208, -0.8453280342845356],
        [1.486682827766369237, 0.51942371758519617098],
    ),
    (
        [-0.39723402378002337, 0.0],
        [3.0314030302195736, 1.6943494682876525],
        [3.311878470130468, 10.408340262586657],
        [0.96410396647740428736, -1.1479680477869922107],
    ),
    (
        [3.7021681090320255, 0.0],
        [2.514731469175955, 0.9219919237811283],
        [-1.4724171142075972, -0.7205504317269917],
        [0.079219753714576129386, 0.015177398497192802712],
    ),
    (
        [-0.37527391039756797, 0.0],
        [4.520940229997019, 0.0],
        [-8.193654137368544, 4.845534301895054],
        [1.5147804853043782319, -0.21507520264892506461],
    ),
    (
        [-1.1853272268219701, 0.0],
        [4.381286043785652, 0.0],
        [9.296242556025653, 4.576474932639679],
        [-1.4086538718964113341, -0.44520704168769836539],
    ),
    (
        [0.999684373275354, 0.0],
        [3.122561123570767, 0.0],
        [-8.678528407750791, 8.171068244853721],
        [0.12861677638061949409, 0.10549543935558558327],
    ),
];

/// (n, a, z, L_n^{(a)}(z))
const LAGUERRE: &[(usize, f64, [f64; 2], [f64; 2])] = &[
    (
        15,
        0.6870702324739674,
        [11.747846603279022, -3.004292526453682],
        [-89.649583081223139254, -699.58656781206374508],
    ),
    (
        0,
        4.980071156554308,
        [8.952328834257187, 2.8681750312966177],
        [1.0, 0.0],
    ),
    (
        22,
        4.199632796262178,
        [-6.341338057135024, 0.0],
        [3623549832.8902040466, 0.0],
    ),
    (
        14,
        1.2691666264636603,
        [0.3808107551811517, 0.0],
        [-2.5609570546795264474, 0.0],
    ),
    (
        2,
        2.129767164982695,
        [29.15499225422721, 0.0],
        [311.06606180118522858, 0.0],
    ),
    (0, 4.52154959781937, [29.179220459625263, 0.0], [1.0, 0.0]),
    (
        2,
        4.937766386002976,
        [5.428561395427444, -1.1251360010314553],
        [-2.962998851620969327, 1.6980608678328695169],
    ),
    (
        4,
        2.2829948346614097,
        [32.9217423296505, 0.0],
        [19814.793135163593401, 0.0],
    ),
    (
        17,
        0.11016314620346701,
        [28.941858895243456, -1.989626048886926],
        [-249885.06710373184607, 380448.7079101465787],
    ),
    (
        21,
        2.616228763539953,
        [8.60609469233292, 0.0],
        [-28.510902980368292796, 0.0],
    ),
    (
        20,
        3.385331821350133,
        [38.04753297203767, 9.526075391069867],
        [940903186.28415327167, 99013271.260511928085],
    ),
    (
        11,
        4.652418151814181,
        [31.967909495583676, -2.288116265271185],
        [-200321.26621787777972, -72731.303614960426878],
    ),
    (
        3,
        0.5890283747489548,
        [0.11395887881027633, 0.0],
        [1.9545003700143056566, 0.0],
    ),
    (0, 1.3474001687254678, [31.545008166203367, 0.0], [1.0, 0.0]),
    (
        7,
        3.086360693877444,
        [-17.39099142480815, 0.0],
        [1797457.3721482986771, 0.0],
    ),
    (
        24,
        2.344831059886367,
        [-9.317028338619629, 0.0],
        [85935156550.51298293, 0.0],
    ),
    (
        13,
        0.7316310133037599,
        [0.6507092425530239, 0.0],
        [-0.8141837591823731366, 0.0],
    ),
    (
        16,
        1.8096460273340549,
        [-7.4723939569325974, -4.362084052617732],
        [-61792044.439547899499, -67757468.611548195983],
    ),
    (
        22,
        4.756613796559608,
        [8.861470329722327, 0.0],
        [-118.19301528358348167, 0.0],
    ),
    (
        14,
        4.553073481010302,
        [1.8515666642343866, 0.0],
        [-56.772355759079837479, 0.0],
    ),
];

#[test]
fn kummer_matches_reference_values() {
    for &(a, b, z, expect) in KUMMER {
        let v = kummer_1f1(c(a), c(b), c(z)).unwrap();
        let expect = c(expect);
        let err = (v - expect).norm() / expect.norm();
        assert!(
            err < 1e-13,
            "1F1({a:?}; {b:?}; {z:?}) = {v}, expected {expect}, rel {err:e}"
        );
    }
}

#[test]
fn laguerre_matches_reference_values() {
    for &(n, a, z, expect) in LAGUERRE {
        let v = laguerre(n, a, c(z));
        let expect = c(expect);
        let err = (v - expect).norm() / expect.norm();
        assert!(
            err < 1e-11,
            "L_{n}^({a})({z:?}) = {v}, expected {expect}, rel {err:e}"
        );
    }
}

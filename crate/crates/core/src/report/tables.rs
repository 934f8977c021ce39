//! Published reference energies, kept verbatim. Binding-energy tables (T5,
//! T6) are stored as printed (positive −E) and negated on load.

pub(crate) const T1_DELTAS: [f64; 10] = [0.01, 0.02, 0.03, 0.04, 0.05, 0.06, 0.07, 0.08, 0.09, 0.1];

pub(crate) const T1_COLUMNS: [&str; 3] = ["1/N", "Dynamical", "Shifted 1/N"];

/// (E, [1/N, Dynamical, Shifted 1/N]) per δ.
pub(crate) const T1: [(f64, [Option<f64>; 3]); 10] = [
    (-0.4900009, [Some(-0.490001), Some(-0.4900010), None]),
    (-0.4800078, [Some(-0.480008), Some(-0.4800078), Some(-0.48000783)]),
    (-0.4700259, [Some(-0.470026), Some(-0.4700260), None]),
    (-0.4600608, [Some(-0.460061), Some(-0.4600609), Some(-0.46006101)]),
    (-0.4501172, [Some(-0.450117), Some(-0.4501174), None]),
    (-0.4402000, [Some(-0.440200), Some(-0.4402004), Some(-0.44020057)]),
    (-0.4303134, [Some(-0.430313), None, None]),
    (-0.4204617, [Some(-0.420461), Some(-0.4204636), Some(-0.42046386)]),
    (-0.4106488, [Some(-0.410647), None, None]),
    (-0.4008785, [Some(-0.400875), Some(-0.4008839), Some(-0.40088421)]),
];

pub(crate) const T2: [(f64, [Option<f64>; 3]); 10] = [
    (-0.1150134, [Some(-0.115013), Some(-0.1150135), None]),
    (-0.1051033, [Some(-0.105103), Some(-0.1051036), Some(-0.10510361)]),
    (-0.0953346, [Some(-0.095334), Some(-0.0953366), None]),
    (-0.0857621, [Some(-0.085755), Some(-0.0857690), Some(-0.08576959)]),
    (-0.0764326, [Some(-0.076406), Some(-0.0764497), None]),
    (-0.0673900, [Some(-0.067311), Some(-0.0674217), Some(-0.06742608)]),
    (-0.0586800, [Some(-0.058482), None, None]),
    (-0.0503576, [Some(-0.049915), Some(-0.0503922), Some(-0.05040825)]),
    (-0.0424945, [Some(-0.041598), None, None]),
    (-0.0351880, [Some(-0.033500), Some(-0.0349677), Some(-0.03500467)]),
];

pub(crate) const T34_COLUMNS: [&str; 5] = ["E[10,10]", "E[10,11]", "Pertur.", "Variational", "Shifted"];

/// (label, n, ℓ, δ, E, comparison columns) in printed row order.
pub(crate) type StateRow = (&'static str, u32, u32, f64, f64, [Option<f64>; 5]);

pub(crate) const T3: [StateRow; 10] = [
    (
        "2s",
        1,
        0,
        0.10,
        -0.0351880,
        [Some(-0.034941), Some(-0.034941), Some(-0.034425), Some(-0.034935), Some(-0.03500467)],
    ),
    ("2p", 0, 1, 0.10, -0.0326733, [Some(-0.032469), Some(-0.032469), Some(-0.032042), None, Some(-0.03247015)]),
    (
        "2s",
        1,
        0,
        0.08,
        -0.0503576,
        [Some(-0.050387), Some(-0.050387), Some(-0.050222), Some(-0.050384), Some(-0.05040825)],
    ),
    ("2p", 0, 1, 0.08, -0.0489939, [Some(-0.048997), Some(-0.048997), None, None, Some(-0.04899693)]),
    (
        "2s",
        1,
        0,
        0.06,
        -0.0673900,
        [Some(-0.067421), Some(-0.067421), Some(-0.067385), Some(-0.067421), Some(-0.06742608)],
    ),
    ("2p", 0, 1, 0.06, -0.0667611, [Some(-0.066778), Some(-0.066778), None, None, Some(-0.06677729)]),
    (
        "2s",
        1,
        0,
        0.04,
        -0.0857621,
        [Some(-0.085769), Some(-0.085769), Some(-0.085767), Some(-0.085769), Some(-0.08576959)],
    ),
    ("2p", 0, 1, 0.04, -0.0855520, [Some(-0.085591), Some(-0.085591), None, None, Some(-0.08555913)]),
    (
        "2s",
        1,
        0,
        0.02,
        -0.1051033,
        [Some(-0.105104), Some(-0.105104), Some(-0.105104), Some(-0.105104), Some(-0.10510361)],
    ),
    ("2p", 0, 1, 0.02, -0.1050744, [Some(-0.105075), Some(-0.105075), Some(-0.105075), None, Some(-0.10507464)]),
];

pub(crate) const T4: [StateRow; 12] = [
    (
        "3s",
        2,
        0,
        0.06,
        -0.0070778,
        [Some(-0.005461), Some(-0.005462), Some(-0.004538), Some(-0.005454), Some(-0.00566638)],
    ),
    ("3p", 1, 1, 0.06, -0.0054058, [Some(-0.004471), Some(-0.004472), None, None, Some(-0.00449233)]),
    ("3d", 0, 2, 0.06, -0.0029240, [Some(-0.002308), Some(-0.002309), None, None, Some(-0.00231356)]),
    ("3s", 2, 0, 0.05, -0.0119523, [Some(-0.011576), Some(-0.011576), None, None, Some(-0.01168544)]),
    ("3p", 1, 1, 0.05, -0.0111117, [Some(-0.010929), Some(-0.010929), Some(-0.010538), None, Some(-0.01093985)]),
    ("3d", 0, 2, 0.05, -0.0096940, [Some(-0.009555), Some(-0.009555), Some(-0.009292), None, Some(-0.00955542)]),
    (
        "3s",
        2,
        0,
        0.04,
        -0.0188586,
        [Some(-0.018823), Some(-0.018823), Some(-0.018707), Some(-0.018822), Some(-0.01886716)],
    ),
    ("3p", 1, 1, 0.04, -0.0184505, [Some(-0.018453), Some(-0.018453), None, None, Some(-0.01845705)]),
    ("3d", 0, 2, 0.04, -0.0176910, [Some(-0.017682), Some(-0.017682), None, None, Some(-0.01768208)]),
    (
        "3s",
        2,
        0,
        0.02,
        -0.0360213,
        [Some(-0.036025), Some(-0.036025), Some(-0.036022), Some(-0.036025), Some(-0.03602738)],
    ),
    ("3p", 1, 1, 0.02, -0.0359640, [Some(-0.035968), Some(-0.035968), Some(-0.035965), None, Some(-0.03596771)]),
    ("3d", 0, 2, 0.02, -0.0358490, [Some(-0.035851), Some(-0.035851), Some(-0.035849), None, Some(-0.03585066)]),
];

pub(crate) const T5_G: [f64; 6] = [0.002, 0.005, 0.010, 0.020, 0.025, 0.050];

/// Column order of the screening-scaled table: (label, n, ℓ).
pub(crate) const T5_STATES: [(&str, u32, u32); 5] =
    [("1s", 0, 0), ("2s", 1, 0), ("2p", 0, 1), ("3p", 1, 1), ("3d", 0, 2)];

/// Printed −E per G row, columns as in `T5_STATES`.
pub(crate) const T5: [[f64; 5]; 6] = [
    [0.9960000, 0.2460002, 0.2460001, 0.1071120, 0.1071114],
    [0.9900002, 0.2400034, 0.2400024, 0.1011255, 0.1011160],
    [0.9800019, 0.2300269, 0.2300193, 0.0912217, 0.0911475],
    [0.9600156, 0.2102066, 0.2101489, 0.0719281, 0.0713617],
    [0.9500302, 0.2003953, 0.2002857, 0.0626485, 0.0615665],
    [0.9002344, 0.1528652, 0.1520991, 0.0222235, 0.0141374],
];

pub(crate) const T6_DELTA: f64 = 0.2;

/// (A, ℓ, n, printed −E), left block then right block.
pub(crate) const T6: [(f64, u32, u32, f64); 17] = [
    (4.0, 0, 0, 3.207029),
    (8.0, 0, 0, 14.403752),
    (8.0, 1, 0, 2.433587),
    (16.0, 0, 0, 60.801938),
    (16.0, 1, 0, 12.818287),
    (24.0, 0, 0, 139.20131),
    (24.0, 1, 0, 31.212563),
    (24.0, 2, 0, 11.249961),
    (16.0, 0, 1, 12.825303),
    (16.0, 0, 2, 4.023139),
    (16.0, 1, 1, 4.009505),
    (24.0, 0, 1, 31.217455),
    (24.0, 0, 2, 11.279786),
    (24.0, 1, 1, 11.269899),
    (24.0, 1, 2, 4.412177),
    (24.0, 2, 1, 4.380887),
    (24.0, 2, 2, 1.411568),
];

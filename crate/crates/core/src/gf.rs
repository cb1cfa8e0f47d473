//! The three-document "gold silver truck" collection and its reference values.
//!
//! Values are stored rounded to 3 or 4 decimals, so comparisons against them need
//! the tolerances in [`crate::reproduce`].

use crate::corpus::{build_index, CorpusIndex};

pub const DOCUMENTS: [(&str, &str); 3] = [
    ("d1", "Shipment of gold damaged in a fire"),
    ("d2", "Delivery of silver arrived in a silver truck"),
    ("d3", "Shipment of gold arrived in a truck"),
];

pub const QUERY: &str = "gold silver truck";

/// Label used for the query when it is placed alongside the documents.
pub const QUERY_LABEL: &str = "q";

pub const VOCABULARY: [&str; 11] = [
    "a", "arrived", "damaged", "delivery", "fire", "gold", "in", "of", "shipment", "silver",
    "truck",
];

/// `tf_{i,β}`, rows are documents.
pub const TERM_FREQUENCIES: [[u32; 11]; 3] = [
    [1, 0, 1, 0, 1, 1, 1, 1, 1, 0, 0],
    [1, 1, 0, 1, 0, 0, 1, 1, 0, 2, 1],
    [1, 1, 0, 0, 0, 1, 1, 1, 1, 0, 1],
];

pub const DOC_COUNTS: [usize; 11] = [3, 2, 1, 1, 1, 2, 3, 3, 2, 1, 2];

pub const IDF_ROW: [f64; 11] = [
    0.0, 0.176, 0.477, 0.477, 0.477, 0.176, 0.0, 0.0, 0.176, 0.477, 0.176,
];

/// Fuzzy memberships `tf/dl`, rows are documents (3 decimals).
pub const MEMBERSHIP_TABLE: [[f64; 11]; 3] = [
    [
        0.143, 0.0, 0.143, 0.0, 0.143, 0.143, 0.143, 0.143, 0.143, 0.0, 0.0,
    ],
    [
        0.125, 0.125, 0.0, 0.125, 0.0, 0.0, 0.125, 0.125, 0.0, 0.25, 0.125,
    ],
    [
        0.143, 0.143, 0.0, 0.0, 0.0, 0.143, 0.143, 0.143, 0.143, 0.0, 0.143,
    ],
];

pub const FUZZY_QUERY: &str = "(gold | silver) & truck";
pub const FUZZY_SCORES: [f64; 3] = [0.0, 0.125, 0.143];

pub const BOOLEAN_QUERY: &str = "gold & shipment & !fire";
pub const BOOLEAN_HITS: [&str; 1] = ["d3"];

pub const LEFT_MATRIX: [[u32; 11]; 11] = [
    [3, 2, 1, 1, 1, 2, 3, 3, 2, 2, 2],
    [2, 2, 0, 1, 0, 1, 2, 2, 1, 2, 2],
    [1, 0, 1, 0, 1, 1, 1, 1, 1, 0, 0],
    [1, 1, 0, 1, 0, 0, 1, 1, 0, 2, 1],
    [1, 0, 1, 0, 1, 1, 1, 1, 1, 0, 0],
    [2, 1, 1, 0, 1, 2, 2, 2, 2, 0, 1],
    [3, 2, 1, 1, 1, 2, 3, 3, 2, 2, 2],
    [3, 2, 1, 1, 1, 2, 3, 3, 2, 2, 2],
    [2, 1, 1, 0, 1, 2, 2, 2, 2, 0, 1],
    [2, 2, 0, 2, 0, 0, 2, 2, 0, 4, 2],
    [2, 2, 0, 1, 0, 1, 2, 2, 1, 2, 2],
];

pub const SINGULAR_VALUES: [f64; 3] = [4.0989, 2.3616, 1.2737];

/// Leading eigenvectors of `L` from the reference tables (the overall sign is arbitrary).
pub const TERM_AXES: [[f64; 11]; 3] = [
    [
        -0.4201, -0.2995, -0.1206, -0.1576, -0.1206, -0.2626, -0.4201, -0.4201, -0.2626, -0.3151,
        -0.2995,
    ],
    [
        -0.0748, 0.2001, -0.2749, 0.3046, -0.2749, -0.3794, -0.0748, -0.0748, -0.3794, 0.6093,
        0.2001,
    ],
    [
        -0.0460, 0.4078, -0.4538, -0.2006, -0.4538, 0.1547, -0.0460, -0.0460, 0.1547, -0.4013,
        0.4078,
    ],
];

pub const METRIC_R3: [[f64; 11]; 11] = [
    [
        0.0127, -0.0067, 0.0195, 0.0055, 0.0195, 0.0072, 0.0127, 0.0127, 0.0072, 0.011, -0.0067,
    ],
    [
        -0.0067, 0.1149, -0.1217, -0.0366, -0.1217, 0.0299, -0.0067, -0.0067, 0.0299, -0.0733,
        0.1149,
    ],
    [
        0.0195, -0.1217, 0.1412, 0.0421, 0.1412, -0.0226, 0.0195, 0.0195, -0.0226, 0.0844, -0.1217,
    ],
    [
        0.0055, -0.0366, 0.0421, 0.0428, 0.0421, -0.0373, 0.0055, 0.0055, -0.0373, 0.0857, -0.0366,
    ],
    [
        0.0195, -0.1217, 0.1412, 0.0421, 0.1412, -0.0226, 0.0195, 0.0195, -0.0226, 0.0844, -0.1217,
    ],
    [
        0.0072, 0.0299, -0.0226, -0.0373, -0.0226, 0.0446, 0.0072, 0.0072, 0.0446, -0.0747, 0.0299,
    ],
    [
        0.0127, -0.0067, 0.0195, 0.0055, 0.0195, 0.0072, 0.0127, 0.0127, 0.0072, 0.011, -0.0067,
    ],
    [
        0.0127, -0.0067, 0.0195, 0.0055, 0.0195, 0.0072, 0.0127, 0.0127, 0.0072, 0.011, -0.0067,
    ],
    [
        0.0072, 0.0299, -0.0226, -0.0373, -0.0226, 0.0446, 0.0072, 0.0072, 0.0446, -0.0747, 0.0299,
    ],
    [
        0.011, -0.0733, 0.0844, 0.0857, 0.0844, -0.0747, 0.011, 0.011, -0.0747, 0.1716, -0.0733,
    ],
    [
        -0.0067, 0.1149, -0.1217, -0.0366, -0.1217, 0.0299, -0.0067, -0.0067, 0.0299, -0.0733,
        0.1149,
    ],
];

// the reference r = 2 table is slightly asymmetric at (4,10)/(10,4); kept verbatim
pub const METRIC_R2: [[f64; 11]; 11] = [
    [
        0.0114, 0.0047, 0.0066, -1.0e-4, 0.0066, 0.0116, 0.0114, 0.0114, 0.0116, -2.0e-4, 0.0047,
    ],
    [
        0.0047, 0.0125, -0.0077, 0.0137, -0.0077, -0.0089, 0.0047, 0.0047, -0.0089, 0.0274, 0.0125,
    ],
    [
        0.0066, -0.0077, 0.0144, -0.0138, 0.0144, 0.0205, 0.0066, 0.0066, 0.0205, -0.0277, -0.0077,
    ],
    [
        -1.0e-4, 0.0137, -0.0138, 0.018, -0.0138, -0.0182, -1.0e-4, -1.0e-4, -0.0182, 0.0361,
        0.0137,
    ],
    [
        0.0066, -0.0077, 0.0144, -0.0138, 0.0144, 0.0205, 0.0066, 0.0066, 0.0205, -0.0277, -0.0077,
    ],
    [
        0.0116, -0.0089, 0.0205, -0.0182, 0.0205, 0.0298, 0.0116, 0.0116, 0.0298, -0.0365, -0.0089,
    ],
    [
        0.0114, 0.0047, 0.0066, -1.0e-4, 0.0066, 0.0116, 0.0114, 0.0114, 0.0116, -2.0e-4, 0.0047,
    ],
    [
        0.0114, 0.0047, 0.0066, -1.0e-4, 0.0066, 0.0116, 0.0114, 0.0114, 0.0116, -2.0e-4, 0.0047,
    ],
    [
        0.0116, -0.0089, 0.0205, -0.0182, 0.0205, 0.0298, 0.0116, 0.0116, 0.0298, -0.0365, -0.0089,
    ],
    [
        -2.0e-4, 0.0274, -0.0277, 0.0362, -0.0277, -0.0365, -2.0e-4, -2.0e-4, -0.0365, 0.0724,
        0.0274,
    ],
    [
        0.0047, 0.0125, -0.0077, 0.0137, -0.0077, -0.0089, 0.0047, 0.0047, -0.0089, 0.0274, 0.0125,
    ],
];

/// Metric-cosine scores of d1, d2, d3 against the query.
pub const LSI_SC_R3: [f64; 3] = [-0.2787, 0.7690, 0.5756];
pub const LSI_SC_R2: [f64; 3] = [-0.0552, 0.9912, 0.4480];
pub const LSI_ORDER: [&str; 3] = ["d2", "d3", "d1"];

/// Unit-sphere chord distances at r = 2, order q, d1, d2, d3.
pub const DISTANCE_LABELS: [&str; 4] = ["q", "d1", "d2", "d3"];
pub const DISTANCES_R2: [[f64; 4]; 4] = [
    [0.0, 1.4547, 0.1326, 1.0507],
    [1.4547, 0.0, 1.5422, 0.5140],
    [0.1326, 1.5422, 0.0, 1.1638],
    [1.0507, 0.5140, 1.1638, 0.0],
];

pub const RON_WIDE: f64 = 0.52;
pub const RON_NARROW: f64 = 0.2;

pub fn index() -> CorpusIndex {
    build_index(DOCUMENTS).expect("fixture corpus is valid")
}

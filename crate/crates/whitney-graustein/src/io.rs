//! Versioned JSON documents for curves and homotopies.
//!
//! Numbers are serialized as decimal strings with 17 significant digits, so a
//! serialize/parse round trip reproduces every `f64` bit-exactly and the
//! files stay toolchain-neutral. Parsing also accepts plain JSON numbers.

use std::fmt;
use std::path::Path;

use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::config::ToleranceConfig;
use crate::curve::PlanarClosedCurve;
use crate::error::{Error, Result};
use crate::homotopy::{
    CertificationReport, HomotopyMetadata, Interpolator, RegularHomotopy, Segment,
    VerifyTolerances,
};
use crate::legendrian::LegendrianCurve;

pub const FORMAT_VERSION: u64 = 1;

/// An `f64` stored as a decimal string at full precision.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Num(pub f64);

impl Serialize for Num {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&format_f64(self.0))
    }
}

impl<'de> Deserialize<'de> for Num {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct NumVisitor;
        impl Visitor<'_> for NumVisitor {
            type Value = Num;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a decimal string or number")
            }
            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<Num, E> {
                v.parse::<f64>()
                    .map(Num)
                    .map_err(|_| E::custom(format!("bad number: {v:?}")))
            }
            fn visit_f64<E: de::Error>(self, v: f64) -> std::result::Result<Num, E> {
                Ok(Num(v))
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<Num, E> {
                Ok(Num(v as f64))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<Num, E> {
                Ok(Num(v as f64))
            }
        }
        deserializer.deserialize_any(NumVisitor)
    }
}

/// 17 significant digits: enough to reproduce any f64 exactly.
pub fn format_f64(v: f64) -> String {
    format!("{v:.16e}")
}

fn nums(values: &[f64]) -> Vec<Num> {
    values.iter().map(|&v| Num(v)).collect()
}

fn floats(values: &[Num]) -> Vec<f64> {
    values.iter().map(|n| n.0).collect()
}

/// Per-coordinate Fourier coefficients `a0 + Σ a_k cos ks + b_k sin ks`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FourierCoeffs {
    pub a0: Num,
    #[serde(default)]
    pub a: Vec<Num>,
    #[serde(default)]
    pub b: Vec<Num>,
}

impl FourierCoeffs {
    fn eval(&self, s: f64) -> f64 {
        let mut v = self.a0.0;
        for (k, c) in self.a.iter().enumerate() {
            v += c.0 * ((k + 1) as f64 * s).cos();
        }
        for (k, c) in self.b.iter().enumerate() {
            v += c.0 * ((k + 1) as f64 * s).sin();
        }
        v
    }

    fn is_empty(&self) -> bool {
        self.a.is_empty() && self.b.is_empty() && self.a0.0 == 0.0
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FourierSpec {
    pub x: FourierCoeffs,
    pub y: FourierCoeffs,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n_samples: Option<usize>,
}

/// A curve on disk: either explicit samples or Fourier coefficients (sampled
/// on ingest), optionally with `z` samples for a Legendrian curve.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CurveDocument {
    pub version: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub samples: Option<Vec<[Num; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fourier: Option<FourierSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub z: Option<Vec<Num>>,
}

impl CurveDocument {
    pub fn from_curve(curve: &PlanarClosedCurve) -> Self {
        Self {
            version: FORMAT_VERSION,
            name: curve.name().map(str::to_owned),
            samples: Some(
                curve
                    .xs()
                    .iter()
                    .zip(curve.ys())
                    .map(|(&x, &y)| [Num(x), Num(y)])
                    .collect(),
            ),
            fourier: None,
            z: None,
        }
    }

    pub fn from_legendrian(gamma: &LegendrianCurve) -> Self {
        let mut doc = Self::from_curve(&gamma.lagrangian_projection());
        doc.z = Some(nums(gamma.zs()));
        doc
    }

    /// Validates the document and builds the plane curve, sampling Fourier
    /// coefficients at `default_n` when the document does not pin a count.
    pub fn to_curve(&self, default_n: usize) -> Result<PlanarClosedCurve> {
        self.check_version()?;
        let curve = match (&self.samples, &self.fourier) {
            (Some(samples), None) => {
                let xs: Vec<f64> = samples.iter().map(|p| p[0].0).collect();
                let ys: Vec<f64> = samples.iter().map(|p| p[1].0).collect();
                PlanarClosedCurve::try_new(xs, ys)?
            }
            (None, Some(fourier)) => {
                if fourier.x.is_empty() && fourier.y.is_empty() {
                    return Err(Error::Precondition(
                        "fourier document has no coefficients".into(),
                    ));
                }
                let n = fourier.n_samples.unwrap_or(default_n);
                PlanarClosedCurve::from_fn(n, |s| (fourier.x.eval(s), fourier.y.eval(s)))?
            }
            (Some(_), Some(_)) => {
                return Err(Error::Precondition(
                    "document carries both samples and fourier coefficients".into(),
                ))
            }
            (None, None) => {
                return Err(Error::Precondition(
                    "document carries neither samples nor fourier coefficients".into(),
                ))
            }
        };
        Ok(match &self.name {
            Some(name) => curve.with_name(name.clone()),
            None => curve,
        })
    }

    /// Builds the Legendrian curve carried by a document with `z` samples.
    pub fn to_legendrian(&self, default_n: usize, cfg: &ToleranceConfig) -> Result<LegendrianCurve> {
        self.check_version()?;
        let Some(z) = &self.z else {
            return Err(Error::Precondition("document has no z samples".into()));
        };
        let curve = self.to_curve(default_n)?;
        LegendrianCurve::try_new(curve.xs().to_vec(), curve.ys().to_vec(), floats(z), cfg)
    }

    fn check_version(&self) -> Result<()> {
        if self.version != FORMAT_VERSION {
            return Err(Error::Version {
                found: self.version,
            });
        }
        Ok(())
    }
}

/// One serialized segment interpolator.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum SegmentDocument {
    StraightLine {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        area_target: Option<Num>,
        #[serde(default)]
        reversed: bool,
    },
    SurgeryBump {
        window: [Num; 2],
        #[serde(default)]
        guards: Vec<[Num; 2]>,
        #[serde(default)]
        reversed: bool,
    },
    ReparametrizationPath {
        displacement: Vec<Num>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        area_target: Option<Num>,
        #[serde(default)]
        reversed: bool,
    },
    ScalingPath {
        scale: Num,
        translate: [Num; 2],
        #[serde(default)]
        reversed: bool,
    },
}

impl SegmentDocument {
    fn from_segment(seg: &Segment) -> Self {
        match &seg.interpolator {
            Interpolator::StraightLine { area_target } => SegmentDocument::StraightLine {
                area_target: area_target.map(Num),
                reversed: seg.reversed,
            },
            Interpolator::SurgeryBump { window, guards } => SegmentDocument::SurgeryBump {
                window: [Num(window.0), Num(window.1)],
                guards: guards.iter().map(|g| [Num(g.0), Num(g.1)]).collect(),
                reversed: seg.reversed,
            },
            Interpolator::ReparamPath {
                displacement,
                area_target,
            } => SegmentDocument::ReparametrizationPath {
                displacement: nums(displacement),
                area_target: area_target.map(Num),
                reversed: seg.reversed,
            },
            Interpolator::ScalingPath { scale, translate } => SegmentDocument::ScalingPath {
                scale: Num(*scale),
                translate: [Num(translate.0), Num(translate.1)],
                reversed: seg.reversed,
            },
        }
    }

    fn to_segment(&self) -> Segment {
        match self {
            SegmentDocument::StraightLine {
                area_target,
                reversed,
            } => Segment {
                interpolator: Interpolator::StraightLine {
                    area_target: area_target.map(|n| n.0),
                },
                reversed: *reversed,
            },
            SegmentDocument::SurgeryBump {
                window,
                guards,
                reversed,
            } => Segment {
                interpolator: Interpolator::SurgeryBump {
                    window: (window[0].0, window[1].0),
                    guards: guards.iter().map(|g| (g[0].0, g[1].0)).collect(),
                },
                reversed: *reversed,
            },
            SegmentDocument::ReparametrizationPath {
                displacement,
                area_target,
                reversed,
            } => Segment {
                interpolator: Interpolator::ReparamPath {
                    displacement: floats(displacement),
                    area_target: area_target.map(|n| n.0),
                },
                reversed: *reversed,
            },
            SegmentDocument::ScalingPath {
                scale,
                translate,
                reversed,
            } => Segment {
                interpolator: Interpolator::ScalingPath {
                    scale: scale.0,
                    translate: (translate[0].0, translate[1].0),
                },
                reversed: *reversed,
            },
        }
    }
}

/// Serialized certification report.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ReportDocument {
    pub pass: bool,
    pub endpoint_pass: bool,
    pub speed_pass: bool,
    pub rot_pass: bool,
    pub tangent_pass: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub area_pass: Option<bool>,
    pub max_endpoint_deviation: Num,
    pub min_relative_speed: Num,
    pub min_speed_at: [Num; 2],
    pub rotation_numbers: Vec<Option<i64>>,
    pub max_tangent_angle: Num,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_frame_area: Option<Num>,
    pub frames: usize,
    pub s_samples: usize,
}

impl ReportDocument {
    pub fn from_report(r: &CertificationReport) -> Self {
        Self {
            pass: r.pass,
            endpoint_pass: r.endpoint_pass,
            speed_pass: r.speed_pass,
            rot_pass: r.rot_pass,
            tangent_pass: r.tangent_pass,
            area_pass: r.area_pass,
            max_endpoint_deviation: Num(r.max_endpoint_deviation),
            min_relative_speed: Num(r.min_relative_speed),
            min_speed_at: [Num(r.min_speed_at.0), Num(r.min_speed_at.1)],
            rotation_numbers: r.rotation_numbers.clone(),
            max_tangent_angle: Num(r.max_tangent_angle),
            max_frame_area: r.max_frame_area.map(Num),
            frames: r.frames,
            s_samples: r.s_samples,
        }
    }

    pub fn to_report(&self, cfg: &ToleranceConfig) -> CertificationReport {
        CertificationReport {
            pass: self.pass,
            endpoint_pass: self.endpoint_pass,
            speed_pass: self.speed_pass,
            rot_pass: self.rot_pass,
            rot_constant: self.rot_pass,
            tangent_pass: self.tangent_pass,
            area_pass: self.area_pass,
            max_endpoint_deviation: self.max_endpoint_deviation.0,
            min_relative_speed: self.min_relative_speed.0,
            min_speed_at: (self.min_speed_at[0].0, self.min_speed_at[1].0),
            rotation_numbers: self.rotation_numbers.clone(),
            max_tangent_angle: self.max_tangent_angle.0,
            max_frame_area: self.max_frame_area.map(|n| n.0),
            frames: self.frames,
            s_samples: self.s_samples,
            tolerances: VerifyTolerances {
                endpoint: 1e-6,
                min_relative_speed: cfg.eps_speed,
                max_tangent_angle: std::f64::consts::FRAC_PI_2,
                area: cfg.eps_area,
            },
        }
    }
}

/// A homotopy on disk: keyframes, segment descriptors, trace, optional report.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HomotopyDocument {
    pub version: u64,
    pub keyframes: Vec<CurveDocument>,
    pub segments: Vec<SegmentDocument>,
    #[serde(default)]
    pub trace: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub zero_area_segments: Option<(usize, usize)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub report: Option<ReportDocument>,
}

impl HomotopyDocument {
    pub fn from_homotopy(h: &RegularHomotopy, report: Option<&CertificationReport>) -> Self {
        Self {
            version: FORMAT_VERSION,
            keyframes: h.keyframes().iter().map(CurveDocument::from_curve).collect(),
            segments: h.segments().iter().map(SegmentDocument::from_segment).collect(),
            trace: h.metadata.trace.clone(),
            zero_area_segments: h.metadata.zero_area_segments,
            report: report.map(ReportDocument::from_report),
        }
    }

    pub fn to_homotopy(&self, default_n: usize) -> Result<RegularHomotopy> {
        if self.version != FORMAT_VERSION {
            return Err(Error::Version {
                found: self.version,
            });
        }
        if self.segments.len() + 1 != self.keyframes.len() {
            return Err(Error::Precondition(format!(
                "homotopy document has {} segments for {} keyframes",
                self.segments.len(),
                self.keyframes.len()
            )));
        }
        let keyframes = self
            .keyframes
            .iter()
            .map(|d| d.to_curve(default_n))
            .collect::<Result<Vec<_>>>()?;
        let segments = self.segments.iter().map(SegmentDocument::to_segment).collect();
        RegularHomotopy::new(
            keyframes,
            segments,
            HomotopyMetadata {
                trace: self.trace.clone(),
                zero_area_segments: self.zero_area_segments,
            },
        )
    }
}

/// Serializes any document type to pretty JSON.
pub fn serialize<T: Serialize>(doc: &T) -> Result<String> {
    serde_json::to_string_pretty(doc).map_err(|e| Error::Parse {
        message: e.to_string(),
        line: 0,
        column: 0,
    })
}

/// Parses a document, reporting the line/column of malformed input.
pub fn parse<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse {
        message: e.to_string(),
        line: e.line(),
        column: e.column(),
    })
}

pub fn read_curve_document(path: &Path) -> Result<CurveDocument> {
    parse(&std::fs::read_to_string(path)?)
}

pub fn read_homotopy_document(path: &Path) -> Result<HomotopyDocument> {
    parse(&std::fs::read_to_string(path)?)
}

pub fn write_document<T: Serialize>(doc: &T, path: &Path) -> Result<()> {
    std::fs::write(path, serialize(doc)?)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn format_round_trips_f64_bits() {
        for v in [
            0.1,
            -0.30000000000000004,
            std::f64::consts::PI,
            1.0 / 3.0,
            -0.0,
            6.02e23,
            5e-324,
        ] {
            let parsed: f64 = format_f64(v).parse().unwrap();
            assert_eq!(parsed.to_bits(), v.to_bits(), "value {v}");
        }
    }

    #[test]
    fn curve_document_round_trips_bit_exactly() {
        let curve = PlanarClosedCurve::from_fn(64, |s| (s.cos(), s.sin()))
            .unwrap()
            .with_name("circle");
        let doc = CurveDocument::from_curve(&curve);
        let text = serialize(&doc).unwrap();
        let back: CurveDocument = parse(&text).unwrap();
        let restored = back.to_curve(64).unwrap();
        assert_eq!(restored.xs(), curve.xs());
        assert_eq!(restored.ys(), curve.ys());
        assert_eq!(restored.name(), Some("circle"));
    }

    #[test]
    fn truncated_input_is_a_parse_error() {
        let curve = PlanarClosedCurve::from_fn(64, |s| (s.cos(), s.sin())).unwrap();
        let text = serialize(&CurveDocument::from_curve(&curve)).unwrap();
        let cut = &text[..text.len() / 2];
        match parse::<CurveDocument>(cut) {
            Err(Error::Parse { line, .. }) => assert!(line > 0),
            other => panic!("expected ParseError, got {other:?}"),
        }
    }

    #[test]
    fn unknown_version_is_rejected() {
        let curve = PlanarClosedCurve::from_fn(64, |s| (s.cos(), s.sin())).unwrap();
        let mut doc = CurveDocument::from_curve(&curve);
        doc.version = 99;
        match doc.to_curve(64) {
            Err(Error::Version { found: 99 }) => {}
            other => panic!("expected VersionError, got {other:?}"),
        }
    }

    #[test]
    fn fourier_documents_sample_on_ingest() {
        let doc = CurveDocument {
            version: 1,
            name: Some("harmonic".into()),
            samples: None,
            fourier: Some(FourierSpec {
                x: FourierCoeffs {
                    a0: Num(0.0),
                    a: vec![Num(1.0)],
                    b: vec![],
                },
                y: FourierCoeffs {
                    a0: Num(0.0),
                    a: vec![],
                    b: vec![Num(1.0)],
                },
                n_samples: None,
            }),
            z: None,
        };
        let curve = doc.to_curve(128).unwrap();
        assert_eq!(curve.n(), 128);
        assert!((curve.xs()[0] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn homotopy_document_round_trips() {
        let a = PlanarClosedCurve::from_fn(64, |s| (s.cos(), s.sin())).unwrap();
        let b = a.translate(1.0, 0.0);
        let h = RegularHomotopy::single(
            a,
            b,
            Interpolator::StraightLine { area_target: None },
        )
        .unwrap();
        let doc = HomotopyDocument::from_homotopy(&h, None);
        let text = serialize(&doc).unwrap();
        let back: HomotopyDocument = parse(&text).unwrap();
        let restored = back.to_homotopy(64).unwrap();
        assert_eq!(restored.segment_count(), 1);
        assert_eq!(restored.first().xs(), h.first().xs());
        for t in [0.25, 0.5, 0.75] {
            assert_eq!(
                restored.evaluate_frame(t).xs(),
                h.evaluate_frame(t).xs()
            );
        }
    }
}

use serde::{Deserialize, Serialize};

use super::LinkDiagram;
use crate::error::{Error, Result};

/// A link diagram with an integer framing on every component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FramedLink {
    pub diagram: LinkDiagram,
    pub framings: Vec<i64>,
}

impl FramedLink {
    pub fn new(diagram: LinkDiagram, framings: Vec<i64>) -> Result<Self> {
        if framings.len() != diagram.component_count() {
            return Err(Error::InvalidArgument(format!(
                "{} framings for {} components",
                framings.len(),
                diagram.component_count()
            )));
        }
        Ok(Self { diagram, framings })
    }

    /// Every framing is `+1` or `-1`.
    pub fn is_unit_framed(&self) -> bool {
        self.framings.iter().all(|f| f.abs() == 1)
    }

    pub fn check_unit_framed(&self) -> Result<()> {
        match self.framings.iter().enumerate().find(|(_, f)| f.abs() != 1) {
            Some((component, &framing)) => Err(Error::NotUnitFramed { component, framing }),
            None => Ok(()),
        }
    }

    /// `f_L`, the product of the framings.
    pub fn framing_product(&self) -> i64 {
        self.framings.iter().product()
    }

    pub fn summary(&self) -> FramingSummary {
        FramingSummary {
            components: self.diagram.component_count(),
            crossings: self.diagram.crossing_count(),
            framings: self.framings.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FramingSummary {
    pub components: usize,
    pub crossings: usize,
    pub framings: Vec<i64>,
}

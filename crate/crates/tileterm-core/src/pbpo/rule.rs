use std::fmt;

use crate::graph::{pullback, pushout, Graph, GraphError, Morphism, Pushout};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RuleError {
    #[error("morphism `{name}` is ill-typed: {reason}")]
    IllTyped { name: &'static str, reason: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// A failed rule condition, with the elements that witness it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    LeftSquareNotCommuting { vertices: Vec<String>, edges: Vec<String> },
    LeftSquareNotPullback { detail: String },
    NotMonic { morphism: &'static str },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::LeftSquareNotCommuting { vertices, edges } => {
                write!(f, "left square does not commute")?;
                let items: Vec<&str> =
                    vertices.iter().chain(edges).map(String::as_str).collect();
                if !items.is_empty() {
                    write!(f, " (on K elements {})", items.join(", "))?;
                }
                Ok(())
            }
            Violation::LeftSquareNotPullback { detail } => {
                write!(f, "left square is not a pullback: {detail}")
            }
            Violation::NotMonic { morphism } => write!(f, "{morphism} is not monic"),
        }
    }
}

/// A PBPO⁺ rule together with its completion.
///
/// ```text
///  L  <-l-  K  -r->  R
///  |tL      |tK      |tR
///  v        v        v
///  L' <-l'- K' -r'-> R'
/// ```
///
/// The right square is the pushout of `tK` along `r` and is computed on
/// construction.
#[derive(Debug, Clone)]
pub struct PbpoRule {
    name: String,
    l: Morphism,
    r: Morphism,
    t_l: Morphism,
    t_k: Morphism,
    l_prime: Morphism,
    r_prime: Morphism,
    t_r: Morphism,
}

impl PbpoRule {
    /// Checks that the five morphisms fit the rule shape and completes the
    /// rule. Commutation and the pullback condition are left to
    /// [`PbpoRule::validate`].
    pub fn new(
        name: impl Into<String>,
        l: Morphism,
        r: Morphism,
        t_l: Morphism,
        t_k: Morphism,
        l_prime: Morphism,
    ) -> Result<PbpoRule, RuleError> {
        let typed = |name: &'static str, ok: bool, reason: &str| {
            if ok {
                Ok(())
            } else {
                Err(RuleError::IllTyped { name, reason: reason.to_string() })
            }
        };
        typed("r", r.dom() == l.dom(), "domain of r must be K, the domain of l")?;
        typed("tL", t_l.dom() == l.cod(), "domain of tL must be L")?;
        typed("tK", t_k.dom() == l.dom(), "domain of tK must be K")?;
        typed("l'", l_prime.dom() == t_k.cod(), "domain of l' must be K'")?;
        typed("l'", l_prime.cod() == t_l.cod(), "codomain of l' must be L'")?;
        let completion = complete(&t_k, &r)?;
        Ok(PbpoRule {
            name: name.into(),
            l,
            r,
            t_l,
            t_k,
            l_prime,
            r_prime: completion.left,
            t_r: completion.right,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> PbpoRule {
        self.name = name.into();
        self
    }

    pub fn l(&self) -> &Morphism {
        &self.l
    }

    pub fn r(&self) -> &Morphism {
        &self.r
    }

    pub fn t_l(&self) -> &Morphism {
        &self.t_l
    }

    pub fn t_k(&self) -> &Morphism {
        &self.t_k
    }

    pub fn l_prime(&self) -> &Morphism {
        &self.l_prime
    }

    pub fn r_prime(&self) -> &Morphism {
        &self.r_prime
    }

    pub fn t_r(&self) -> &Morphism {
        &self.t_r
    }

    pub fn lhs(&self) -> &Graph {
        self.l.cod()
    }

    pub fn lhs_type(&self) -> &Graph {
        self.t_l.cod()
    }

    pub fn interface(&self) -> &Graph {
        self.l.dom()
    }

    pub fn interface_type(&self) -> &Graph {
        self.t_k.cod()
    }

    pub fn rhs(&self) -> &Graph {
        self.r.cod()
    }

    pub fn rhs_type(&self) -> &Graph {
        self.r_prime.cod()
    }

    /// Recomputes `R'`, `r'` and `tR`. The result equals `self`.
    pub fn completed(&self) -> PbpoRule {
        PbpoRule::new(
            self.name.clone(),
            self.l.clone(),
            self.r.clone(),
            self.t_l.clone(),
            self.t_k.clone(),
            self.l_prime.clone(),
        )
        .expect("a constructed rule is well-typed")
    }

    /// Checks the left square and the monicity of `tL` and `tK`.
    pub fn validate(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let top = self.t_l.compose_unchecked(&self.l);
        let bottom = self.l_prime.compose_unchecked(&self.t_k);
        if top != bottom {
            let k = self.interface();
            out.push(Violation::LeftSquareNotCommuting {
                vertices: (0..k.vertex_count())
                    .filter(|&i| top.v(i) != bottom.v(i))
                    .map(|i| k.vertices()[i].id.clone())
                    .collect(),
                edges: (0..k.edge_count())
                    .filter(|&i| top.e(i) != bottom.e(i))
                    .map(|i| k.edges()[i].id.clone())
                    .collect(),
            });
        } else if let Some(detail) = pullback_defect(&self.t_l, &self.l_prime, &self.l, &self.t_k) {
            out.push(Violation::LeftSquareNotPullback { detail });
        }
        if !self.t_l.is_monic() {
            out.push(Violation::NotMonic { morphism: "tL" });
        }
        if !self.t_k.is_monic() {
            out.push(Violation::NotMonic { morphism: "tK" });
        }
        out
    }

    /// True if the completed right square is also a pullback.
    pub fn right_square_is_pullback(&self) -> bool {
        pullback_defect(&self.r_prime, &self.t_r, &self.t_k, &self.r).is_none()
    }
}

fn complete(t_k: &Morphism, r: &Morphism) -> Result<Pushout, GraphError> {
    pushout(t_k, r)
}

/// For a commuting square `f ∘ p = g ∘ q` over the cospan `f, g`, explains
/// why the apex is not their pullback, or returns `None` if it is.
pub(crate) fn pullback_defect(
    f: &Morphism,
    g: &Morphism,
    p: &Morphism,
    q: &Morphism,
) -> Option<String> {
    let pb = match pullback(f, g) {
        Ok(pb) => pb,
        Err(e) => return Some(e.to_string()),
    };
    let mediator = match pb.mediate(p, q) {
        Ok(m) => m,
        Err(e) => return Some(e.to_string()),
    };
    if mediator.is_iso() {
        return None;
    }
    let missing_v: Vec<&str> = (0..pb.object.vertex_count())
        .filter(|j| !mediator.vertex_map().contains(j))
        .map(|j| pb.object.vertices()[j].id.as_str())
        .collect();
    let missing_e: Vec<&str> = (0..pb.object.edge_count())
        .filter(|j| !mediator.edge_map().contains(j))
        .map(|j| pb.object.edges()[j].id.as_str())
        .collect();
    if missing_v.is_empty() && missing_e.is_empty() {
        Some("the apex identifies elements that the pullback keeps apart".into())
    } else {
        let items: Vec<&str> = missing_v.into_iter().chain(missing_e).collect();
        Some(format!("pullback elements {} have no preimage in the apex", items.join(", ")))
    }
}

//! Exact two-phase simplex over the rationals with Bland's rule.
//!
//! Solves `maximize c·x` subject to linear rows `a·x {≤,=,≥} b` and `x ≥ 0`.

use num::{BigRational, One, Signed, Zero};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Constraint {
    pub coeffs: Vec<BigRational>,
    pub rel: Relation,
    pub rhs: BigRational,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LinearProgram {
    pub num_vars: usize,
    pub objective: Vec<BigRational>,
    pub constraints: Vec<Constraint>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum LpOutcome {
    Optimal { value: BigRational, point: Vec<BigRational> },
    Infeasible,
    Unbounded,
}

impl LinearProgram {
    pub fn new(num_vars: usize) -> Self {
        LinearProgram {
            num_vars,
            objective: vec![BigRational::zero(); num_vars],
            constraints: Vec::new(),
        }
    }

    pub fn add(&mut self, coeffs: Vec<BigRational>, rel: Relation, rhs: BigRational) {
        assert_eq!(coeffs.len(), self.num_vars, "constraint width");
        self.constraints.push(Constraint { coeffs, rel, rhs });
    }

    pub fn solve(&self) -> LpOutcome {
        Tableau::build(self).solve(&self.objective)
    }
}

struct Tableau {
    rows: Vec<Vec<BigRational>>,
    rhs: Vec<BigRational>,
    basis: Vec<usize>,
    num_vars: usize,
    /// Columns at or after this index are artificial.
    first_artificial: usize,
}

enum Step {
    Optimal,
    Unbounded,
}

impl Tableau {
    fn build(lp: &LinearProgram) -> Tableau {
        let m = lp.constraints.len();
        let slack_count = lp.constraints.iter().filter(|c| c.rel != Relation::Eq).count();
        let first_artificial = lp.num_vars + slack_count;
        let artificial_count = lp.constraints.iter().filter(|c| needs_artificial(c)).count();
        let width = first_artificial + artificial_count;

        let mut rows = Vec::with_capacity(m);
        let mut rhs = Vec::with_capacity(m);
        let mut basis = Vec::with_capacity(m);
        let (mut slack, mut art) = (lp.num_vars, first_artificial);
        for c in &lp.constraints {
            let flip = c.rhs.is_negative();
            let sign = |x: &BigRational| if flip { -x } else { x.clone() };
            let mut row: Vec<BigRational> = vec![BigRational::zero(); width];
            for (dst, src) in row.iter_mut().zip(&c.coeffs) {
                *dst = sign(src);
            }
            let rel = match (c.rel, flip) {
                (Relation::Le, true) => Relation::Ge,
                (Relation::Ge, true) => Relation::Le,
                (r, _) => r,
            };
            match rel {
                Relation::Le => {
                    row[slack] = BigRational::one();
                    basis.push(slack);
                }
                Relation::Ge => {
                    row[slack] = -BigRational::one();
                    row[art] = BigRational::one();
                    basis.push(art);
                    art += 1;
                }
                Relation::Eq => {
                    row[art] = BigRational::one();
                    basis.push(art);
                    art += 1;
                }
            }
            if c.rel != Relation::Eq {
                slack += 1;
            }
            rows.push(row);
            rhs.push(sign(&c.rhs));
        }
        Tableau {
            rows,
            rhs,
            basis,
            num_vars: lp.num_vars,
            first_artificial,
        }
    }

    fn width(&self) -> usize {
        self.rows.first().map_or(self.first_artificial, Vec::len)
    }

    fn pivot(&mut self, r: usize, col: usize) {
        let p = self.rows[r][col].clone();
        for x in self.rows[r].iter_mut() {
            *x /= &p;
        }
        self.rhs[r] /= &p;
        let pivot_row = self.rows[r].clone();
        let pivot_rhs = self.rhs[r].clone();
        for i in 0..self.rows.len() {
            if i == r || self.rows[i][col].is_zero() {
                continue;
            }
            let f = self.rows[i][col].clone();
            for (x, y) in self.rows[i].iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
            self.rhs[i] -= &f * &pivot_rhs;
        }
        self.basis[r] = col;
    }

    /// Primal simplex on columns `< limit`, maximizing `cost`.
    fn run(&mut self, cost: &[BigRational], limit: usize) -> Step {
        loop {
            let mut entering = None;
            for j in 0..limit {
                if self.basis.contains(&j) {
                    continue;
                }
                let mut reduced = cost[j].clone();
                for (i, &b) in self.basis.iter().enumerate() {
                    if !cost[b].is_zero() && !self.rows[i][j].is_zero() {
                        reduced -= &cost[b] * &self.rows[i][j];
                    }
                }
                if reduced.is_positive() {
                    entering = Some(j);
                    break;
                }
            }
            let Some(col) = entering else {
                return Step::Optimal;
            };
            let mut best: Option<(BigRational, usize, usize)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][col];
                if !a.is_positive() {
                    continue;
                }
                let ratio = &self.rhs[i] / a;
                let better = match &best {
                    None => true,
                    Some((q, _, b)) => ratio < *q || (ratio == *q && self.basis[i] < *b),
                };
                if better {
                    best = Some((ratio, i, self.basis[i]));
                }
            }
            let Some((_, row, _)) = best else {
                return Step::Unbounded;
            };
            self.pivot(row, col);
        }
    }

    fn objective_value(&self, cost: &[BigRational]) -> BigRational {
        self.basis
            .iter()
            .zip(&self.rhs)
            .map(|(&b, v)| &cost[b] * v)
            .sum()
    }

    fn solve(mut self, objective: &[BigRational]) -> LpOutcome {
        let width = self.width();
        let mut phase1 = vec![BigRational::zero(); width];
        for c in phase1.iter_mut().skip(self.first_artificial) {
            *c = -BigRational::one();
        }
        self.run(&phase1, width);
        if self.objective_value(&phase1).is_negative() {
            return LpOutcome::Infeasible;
        }
        // Drive zero-valued artificials out of the basis; rows where that is
        // impossible are linearly dependent and can go.
        let mut i = 0;
        while i < self.rows.len() {
            if self.basis[i] >= self.first_artificial {
                match (0..self.first_artificial).find(|&j| !self.rows[i][j].is_zero()) {
                    Some(j) => self.pivot(i, j),
                    None => {
                        self.rows.remove(i);
                        self.rhs.remove(i);
                        self.basis.remove(i);
                        continue;
                    }
                }
            }
            i += 1;
        }
        let mut cost = vec![BigRational::zero(); width];
        cost[..self.num_vars].clone_from_slice(objective);
        match self.run(&cost, self.first_artificial) {
            Step::Unbounded => LpOutcome::Unbounded,
            Step::Optimal => {
                let mut point = vec![BigRational::zero(); self.num_vars];
                for (&b, v) in self.basis.iter().zip(&self.rhs) {
                    if b < self.num_vars {
                        point[b] = v.clone();
                    }
                }
                LpOutcome::Optimal {
                    value: self.objective_value(&cost),
                    point,
                }
            }
        }
    }
}

fn needs_artificial(c: &Constraint) -> bool {
    match c.rel {
        Relation::Eq => true,
        Relation::Ge => !c.rhs.is_negative(),
        Relation::Le => c.rhs.is_negative(),
    }
}

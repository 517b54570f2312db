use crate::rdf::Term;
use crate::vocab::PrefixMap;

/// Variable index within the scope of one (sub)query.
pub type Var = usize;

#[derive(Clone, Debug, PartialEq)]
pub enum TermPattern {
    Var(Var),
    Term(Term),
}

impl TermPattern {
    pub fn as_var(&self) -> Option<Var> {
        match self {
            TermPattern::Var(v) => Some(*v),
            TermPattern::Term(_) => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TriplePattern {
    pub subject: TermPattern,
    pub predicate: TermPattern,
    pub object: TermPattern,
}

impl TriplePattern {
    pub fn positions(&self) -> [&TermPattern; 3] {
        [&self.subject, &self.predicate, &self.object]
    }

    pub fn vars(&self) -> impl Iterator<Item = Var> + '_ {
        self.positions().into_iter().filter_map(TermPattern::as_var)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum GroupElement {
    Triple(TriplePattern),
    Filter(Expr),
    Optional(GroupPattern),
    Service {
        iri: String,
        silent: bool,
        group: GroupPattern,
    },
    SubSelect(Box<Query>),
    Group(GroupPattern),
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct GroupPattern {
    pub elements: Vec<GroupElement>,
}

impl GroupPattern {
    pub fn filters(&self) -> impl Iterator<Item = &Expr> {
        self.elements.iter().filter_map(|e| match e {
            GroupElement::Filter(f) => Some(f),
            _ => None,
        })
    }

    /// True when the group holds only triple patterns and filters.
    pub fn is_basic(&self) -> bool {
        self.elements
            .iter()
            .all(|e| matches!(e, GroupElement::Triple(_) | GroupElement::Filter(_)))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BinOp {
    Or,
    And,
    Eq,
    Ne,
    Lt,
    Le,
    Gt,
    Ge,
    Add,
    Sub,
    Mul,
    Div,
}

impl BinOp {
    pub fn symbol(self) -> &'static str {
        match self {
            BinOp::Or => "||",
            BinOp::And => "&&",
            BinOp::Eq => "=",
            BinOp::Ne => "!=",
            BinOp::Lt => "<",
            BinOp::Le => "<=",
            BinOp::Gt => ">",
            BinOp::Ge => ">=",
            BinOp::Add => "+",
            BinOp::Sub => "-",
            BinOp::Mul => "*",
            BinOp::Div => "/",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Func {
    Str,
    Lang,
    LangMatches,
    Datatype,
    Bound,
    IsIri,
    IsBlank,
    IsLiteral,
    IsNumeric,
    Year,
    Month,
    Day,
    Hours,
    Minutes,
    Seconds,
    Contains,
    StrStarts,
    StrEnds,
    LCase,
    UCase,
    StrLen,
    Coalesce,
    If,
    Abs,
}

impl Func {
    pub fn from_name(name: &str) -> Option<Func> {
        Some(match name.to_ascii_uppercase().as_str() {
            "STR" => Func::Str,
            "LANG" => Func::Lang,
            "LANGMATCHES" => Func::LangMatches,
            "DATATYPE" => Func::Datatype,
            "BOUND" => Func::Bound,
            "ISIRI" | "ISURI" => Func::IsIri,
            "ISBLANK" => Func::IsBlank,
            "ISLITERAL" => Func::IsLiteral,
            "ISNUMERIC" => Func::IsNumeric,
            "YEAR" => Func::Year,
            "MONTH" => Func::Month,
            "DAY" => Func::Day,
            "HOURS" => Func::Hours,
            "MINUTES" => Func::Minutes,
            "SECONDS" => Func::Seconds,
            "CONTAINS" => Func::Contains,
            "STRSTARTS" => Func::StrStarts,
            "STRENDS" => Func::StrEnds,
            "LCASE" => Func::LCase,
            "UCASE" => Func::UCase,
            "STRLEN" => Func::StrLen,
            "COALESCE" => Func::Coalesce,
            "IF" => Func::If,
            "ABS" => Func::Abs,
            _ => return None,
        })
    }

    /// Accepted argument counts (min, max).
    pub fn arity(self) -> (usize, usize) {
        match self {
            Func::LangMatches | Func::Contains | Func::StrStarts | Func::StrEnds => (2, 2),
            Func::If => (3, 3),
            Func::Coalesce => (1, usize::MAX),
            _ => (1, 1),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Func::Str => "str",
            Func::Lang => "lang",
            Func::LangMatches => "langMatches",
            Func::Datatype => "datatype",
            Func::Bound => "bound",
            Func::IsIri => "isIRI",
            Func::IsBlank => "isBlank",
            Func::IsLiteral => "isLiteral",
            Func::IsNumeric => "isNumeric",
            Func::Year => "year",
            Func::Month => "month",
            Func::Day => "day",
            Func::Hours => "hours",
            Func::Minutes => "minutes",
            Func::Seconds => "seconds",
            Func::Contains => "contains",
            Func::StrStarts => "strStarts",
            Func::StrEnds => "strEnds",
            Func::LCase => "lcase",
            Func::UCase => "ucase",
            Func::StrLen => "strlen",
            Func::Coalesce => "coalesce",
            Func::If => "if",
            Func::Abs => "abs",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AggFunc {
    Count,
    Sum,
    Min,
    Max,
    Avg,
    Sample,
}

impl AggFunc {
    pub fn from_name(name: &str) -> Option<AggFunc> {
        Some(match name.to_ascii_uppercase().as_str() {
            "COUNT" => AggFunc::Count,
            "SUM" => AggFunc::Sum,
            "MIN" => AggFunc::Min,
            "MAX" => AggFunc::Max,
            "AVG" => AggFunc::Avg,
            "SAMPLE" => AggFunc::Sample,
            _ => return None,
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Aggregate {
    pub func: AggFunc,
    pub distinct: bool,
    /// `None` for `COUNT(*)`.
    pub arg: Option<Expr>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Var(Var),
    Const(Term),
    Not(Box<Expr>),
    Neg(Box<Expr>),
    Binary(BinOp, Box<Expr>, Box<Expr>),
    Call(Func, Vec<Expr>),
    /// Constructor-style cast such as `xsd:double(?x)`; holds the datatype IRI.
    Cast(String, Box<Expr>),
    Aggregate(Box<Aggregate>),
}

impl Expr {
    pub fn binary(op: BinOp, a: Expr, b: Expr) -> Expr {
        Expr::Binary(op, Box::new(a), Box::new(b))
    }

    /// Calls `f` on this node and every sub-expression, aggregates included.
    pub fn walk<'a>(&'a self, f: &mut dyn FnMut(&'a Expr)) {
        f(self);
        match self {
            Expr::Var(_) | Expr::Const(_) => {}
            Expr::Not(e) | Expr::Neg(e) | Expr::Cast(_, e) => e.walk(f),
            Expr::Binary(_, a, b) => {
                a.walk(f);
                b.walk(f);
            }
            Expr::Call(_, args) => args.iter().for_each(|a| a.walk(f)),
            Expr::Aggregate(agg) => {
                if let Some(arg) = &agg.arg {
                    arg.walk(f);
                }
            }
        }
    }

    /// Variables referenced, in first-seen order.
    pub fn vars(&self) -> Vec<Var> {
        let mut out = Vec::new();
        self.walk(&mut |e| {
            if let Expr::Var(v) = e {
                if !out.contains(v) {
                    out.push(*v);
                }
            }
        });
        out
    }

    pub fn has_aggregate(&self) -> bool {
        let mut found = false;
        self.walk(&mut |e| found |= matches!(e, Expr::Aggregate(_)));
        found
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SelectItem {
    pub expr: Expr,
    pub var: Var,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Projection {
    /// `SELECT *`: the listed variables.
    All(Vec<Var>),
    Items(Vec<SelectItem>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct GroupKey {
    pub expr: Expr,
    pub alias: Option<Var>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct OrderKey {
    pub expr: Expr,
    pub descending: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Query {
    /// Variable names of this scope, indexed by [`Var`].
    pub vars: Vec<String>,
    pub distinct: bool,
    pub projection: Projection,
    pub where_clause: GroupPattern,
    pub group_by: Vec<GroupKey>,
    pub having: Vec<Expr>,
    pub order_by: Vec<OrderKey>,
    pub limit: Option<usize>,
    pub offset: Option<usize>,
    pub prefixes: PrefixMap,
}

impl Query {
    /// Output columns as (name, variable).
    pub fn columns(&self) -> Vec<(String, Var)> {
        let vars: Vec<Var> = match &self.projection {
            Projection::All(vars) => vars.clone(),
            Projection::Items(items) => items.iter().map(|i| i.var).collect(),
        };
        vars.into_iter()
            .map(|v| (self.vars[v].clone(), v))
            .collect()
    }

    /// True when the query groups or aggregates.
    pub fn is_aggregated(&self) -> bool {
        !self.group_by.is_empty()
            || self.having.iter().any(Expr::has_aggregate)
            || self.order_by.iter().any(|k| k.expr.has_aggregate())
            || match &self.projection {
                Projection::Items(items) => items.iter().any(|i| i.expr.has_aggregate()),
                Projection::All(_) => false,
            }
    }

    pub fn var_name(&self, v: Var) -> &str {
        &self.vars[v]
    }
}

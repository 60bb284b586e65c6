use serde_json::{json, Value};

use crate::Command;

fn field() -> Value {
    json!({
        "p": "prime below 2^32",
        "eisenstein": "[c_0, ..., c_e] (optional; defaults to x - p)",
        "precision": "N >= 1",
    })
}

fn series() -> Value {
    json!({
        "field": field(),
        "coeffs": "array of elements; an element is an integer, a decimal string, or an array of e of them",
        "xprec": "M (optional; defaults to the number of coefficients)",
    })
}

fn residue_series() -> Value {
    json!({"p": "prime", "coeffs": "[0, 1, w_2, ...] as integers", "xprec": "M (optional)"})
}

pub fn schema(cmd: Command) -> Value {
    let name = match cmd {
        Command::Prepare => "prepare",
        Command::Divide => "divide",
        Command::Resultant => "resultant",
        Command::Discriminant => "discriminant",
        Command::Newton => "newton",
        Command::Hensel => "hensel",
        Command::Slope0 => "slope0",
        Command::Sen => "sen",
        Command::Lift => "lift",
        Command::Universal => "universal",
    };
    let input = match cmd {
        Command::Prepare | Command::Discriminant | Command::Newton => series(),
        Command::Hensel => {
            let mut s = series();
            s["strategy"] = json!("\"quadratic\" (default) or \"linear\"");
            s
        }
        Command::Divide => json!({
            "field": "FieldSpec (optional when g carries its own field)",
            "g": series(),
            "f": "series, as for g",
        }),
        Command::Resultant => json!({
            "field": "FieldSpec (optional when f carries its own field)",
            "f": series(),
            "g": "series, as for f",
        }),
        Command::Slope0 => json!({"field": field(), "coeffs": "polynomial coefficients, constant term first"}),
        Command::Sen => json!({
            "p": "prime",
            "coeffs": "[0, 1, w_2, ...]",
            "xprec": "M (optional)",
            "n_max": "largest n to compare",
            "strict": "fail on undetermined pairs (optional, default false)",
            "series": ["alternatively, an array of residue series checked as a batch", residue_series()],
        }),
        Command::Lift => json!({
            "field": field(),
            "w": residue_series(),
            "ns": "array of n whose iterates must have simple roots",
            "budget": "number of candidates to try",
            "seed": "integer (optional; --seed takes precedence)",
        }),
        Command::Universal => json!({
            "op": "\"prepare\", \"bgw\", \"compare_bgw\" or \"respol\"",
            "prepare": {
                "n": "Weierstrass degree",
                "order": "truncation order D",
                "kmax": "largest F_k kept",
                "xbound": "X-degree bound for U (optional, default kmax + 1)",
                "specialize": "series to evaluate P_i at (optional)",
            },
            "bgw": {"order": "F_0-degree bound", "kmax": "largest F_k kept"},
            "compare_bgw": {"order": "truncation order", "kmax": "largest F_k kept"},
            "respol": {
                "n": "1, 2 or 3",
                "dmax": "bound on total root degree",
                "gmax": "largest G_k kept",
                "specialize": {"field": field(), "p": "[p_0, ..., p_{n-1}]", "g": "series"},
            },
        }),
    };
    json!({"subcommand": name, "input": input})
}

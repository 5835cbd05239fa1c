use std::time::Instant;
use hypersum::expr::{parse, print};
use hypersum::gosper::{gosper, gosper_definite};
use hypersum::simplify::values_equal;
use hypersum::Expr;

fn modulo_const(g1: &Expr, g2: &Expr, var: &str) -> bool {
    let d = Expr::sub2(g1.clone(), g2.clone());
    let dd = Expr::sub2(d.clone(), d.shift_symbol(var, -1));
    match hypersum::simplify::simplify_combinatorial(&dd) {
        Ok(z) => z.canonical().is_zero_lit(),
        Err(_) => false,
    }
}

fn main() {
    // prompt 2
    let a2 = parse("(-1)^(k+1)*(4*k+1)*factorial(2*k)/(factorial(k)*4^k*(2*k-1)*factorial(k+1))").unwrap();
    let t0 = Instant::now();
    let g2 = gosper(&a2, "k").unwrap();
    let want2 = parse("-(-1)^k*factorial(2*k)/(4^k*factorial(k+1)*factorial(k))").unwrap();
    println!("prompt2 ({:?}): match={} g={}", t0.elapsed(), modulo_const(&g2.g, &want2, "k"), print(&g2.g_pretty));

    // prompt 3
    let a3 = parse("sub(n=n+1,binomial(n,k)^2/binomial(2*n,n))-binomial(n,k)^2/binomial(2*n,n)").unwrap();
    let t0 = Instant::now();
    let g3 = gosper(&a3, "k").unwrap();
    let want3 = parse("((binomial(n + 1,k)^2*binomial(2*n,n) - binomial(2*(n + 1),n + 1)*binomial(n,k)^2)*(2*k - 3*n - 1)*(k - n - 1)^2)/((2*(2*(n + 1) - k)*(2*n + 1)*k - (3*n + 1)*(n + 1)^2)*binomial(2*(n + 1),n + 1)*binomial(2*n,n))").unwrap();
    println!("prompt3 ({:?}): match={}", t0.elapsed(), modulo_const(&g3.g, &want3, "k"));

    // prompt 5
    let a5 = parse("(-25+15*k+18*k^2-2*k^3-k^4)/(-23+479*k+613*k^2+137*k^3+53*k^4+5*k^5+k^6)").unwrap();
    let t0 = Instant::now();
    let g5 = gosper(&a5, "k").unwrap();
    let want5 = parse("-(2*k^2 - 15*k + 8)*k/(23*(k^3 + 4*k^2 + 27*k + 23))").unwrap();
    println!("prompt5 ({:?}): match={} g={}", t0.elapsed(), modulo_const(&g5.g, &want5, "k"), print(&g5.g_pretty));

    // prompt 42 + certificate 43
    let a42 = parse("1/(k+1)*binomial(2*k,k)/(n-k+1)*binomial(2*n-2*k,n-k)").unwrap();
    let t0 = Instant::now();
    let g42 = gosper(&a42, "k").unwrap();
    let want42 = parse("(2*k - n + 1)*(2*k + 1)*binomial(-2*(k - n),-(k - n))*binomial(2*k,k)/((k + 1)*(n + 2)*(n + 1))").unwrap();
    println!("prompt42 ({:?}): match={}", t0.elapsed(), modulo_const(&g42.g, &want42, "k"));
    println!("  p = {}", print(&hypersum::expr::poly_to_expr(&g42.form.p)));
    println!("  q = {}", print(&hypersum::expr::poly_to_expr(&g42.form.q)));
    println!("  r = {}", print(&hypersum::expr::poly_to_expr(&g42.form.r)));
    println!("  f = {:?}", g42.form.f.as_ref().map(|f| format!("{}", f)));

    // prompt 40: k*factorial(k) -> (k+1)*factorial(k) modulo const
    let a40 = parse("k*factorial(k)").unwrap();
    let g40 = gosper(&a40, "k").unwrap();
    let want40 = parse("(k+1)*factorial(k)").unwrap();
    println!("prompt40: match={} g_pretty={}", modulo_const(&g40.g, &want40, "k"), print(&g40.g_pretty));

    // prompt 10 products
    let a10 = parse("prod(a+b*j+c*j^2,j,1,k-1)/prod(e+b*j+c*j^2,j,1,k)").unwrap();
    let g10 = gosper(&a10, "k").unwrap();
    let want10 = parse("prod(a+b*j+c*j^2,j,1,k)/((a-e)*prod(e+b*j+c*j^2,j,1,k))").unwrap();
    println!("prompt10: valueeq={} g={}", values_equal(&g10.g, &want10), print(&g10.g_pretty));

    // prompt 4 pretty display
    let g4 = gosper(&parse("binomial(k,n)").unwrap(), "k").unwrap();
    println!("prompt4 pretty: {}", print(&g4.g_pretty));

    // eq (1): definite binomial sum has no closed form
    let r = gosper_definite(&parse("binomial(n,k)").unwrap(), "k", &Expr::int(0), &Expr::sym("n"));
    println!("eq1 definite: {:?}", r.err().map(|e| e.to_string()));

    // prompt 33 full trace
    let mut tr = hypersum::trace::Trace::collecting();
    let _ = hypersum::gosper::gosper_with(&parse("pochhammer(k-n,n)").unwrap(), "k", hypersum::simplify::Direction::Down, &mut tr).unwrap();
    for l in tr.lines() { println!("T33| {}", l); }
    let mut tr = hypersum::trace::Trace::collecting();
    let _ = hypersum::zeilberger::sumrecursion_with(&parse("binomial(n,k)^2").unwrap(), "k", "n", &Default::default(), &mut tr).unwrap();
    for l in tr.lines() { println!("T34| {}", l); }
}

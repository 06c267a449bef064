// Generated by tests/oracles/generate.py (mpmath, 40 digits). Do not edit.
#![allow(clippy::excessive_precision)]
pub const B_088: f64 = 0.47497368348151668939;
pub const W_088: f64 = 6.2140546494307401769;
pub const Q_PLUS_088: f64 = 8.30753426925232829;
pub const Q_MINUS_088: f64 = -13.924311842918223537;
pub const LEAD_PLUS_088: f64 = 0.69292472111722690444;
pub const LEAD_MINUS_088: f64 = -0.41341331130997153316;
pub const VINF_NORM_SQ_088: f64 = 14.43642120088928954;
pub const P_PLUS_088: f64 = -19.299969282171556167;
pub const P_MINUS_088: f64 = 32.3488031627326179;
pub const C_NU_088: f64 = -27.852909116957952857;
pub const D_NU_088: f64 = 11.989086283222510138;
pub const GAMMA_MINUS_2B_088: f64 = -20.473873135737833879;
pub const B_09: f64 = 0.43588989435406735522;
pub const W_09: f64 = 2.0985478772479404288;
pub const Q_PLUS_09: f64 = 3.2782466815249264247;
pub const Q_MINUS_09: f64 = -5.2302236457793316606;
pub const LEAD_PLUS_09: f64 = 0.66086532418551406976;
pub const LEAD_MINUS_09: f64 = -0.41422311982669318674;
pub const VINF_NORM_SQ_09: f64 = 6.0258790352475243622;
pub const P_PLUS_09: f64 = -9.4133272653644954191;
pub const P_MINUS_09: f64 = 15.018334991760541208;
pub const C_NU_09: f64 = -14.243941875700598557;
pub const D_NU_09: f64 = 4.9605366805486636138;
pub const GAMMA_MINUS_2B_09: f64 = -8.414509106159380661;
pub const B_095: f64 = 0.31224989991991991029;
pub const W_095: f64 = 0.44382488192248988215;
pub const Q_PLUS_095: f64 = 1.1628658701866547084;
pub const Q_MINUS_095: f64 = -1.6062848650239244414;
pub const LEAD_PLUS_095: f64 = 0.58059504314475719627;
pub const LEAD_MINUS_095: f64 = -0.42032031476716334668;
pub const VINF_NORM_SQ_095: f64 = 2.3079535694679941305;
pub const P_PLUS_095: f64 = -6.0470706921260534337;
pub const P_MINUS_095: f64 = 8.3529135900537836235;
pub const C_NU_095: f64 = -10.415298517487280755;
pub const D_NU_095: f64 = 2.002886321398928134;
pub const GAMMA_MINUS_2B_095: f64 = -3.7905143476287282117;
pub const U_ARGS: [f64; 8] = [1e-8, 0.3, 1.0, 2.5, 10.0, 30.0, 55.0, 80.0];
pub const U_LOW_09: [f64; 8] = [0.53754445042193738132, 0.820264239755226364, 1.1496218799218836383, 1.591260578018268478, 2.7782453025277877678, 4.4316825558387323526, 5.755637696386815509, 6.7695966176469220702];
pub const U_HIGH_09: [f64; 8] = [45.14562264857856891, 1.4452153057691258742, 0.86205017725708240257, 0.5533057163988493548, 0.26675133657367341194, 0.14564397607921564524, 0.10383320135883724257, 0.084164532642249910517];
pub const M_ARGS: [f64; 6] = [0.5, 1.0, 5.0, 20.0, 45.0, 70.0];
pub const M_LOW_09: [f64; 6] = [-0.94118249792514075329, -3.5089152651226914496, -153.38890924645039239, -189631419.54602125046, -8424618782190795821.1, -4.6957985015537326929e+29];
pub const M_HIGH_09: [f64; 6] = [1.3029510549003839237, 1.7470342160418000121, 38.110014048733868049, 54073109.508394525997, 2446033230153120506.7, 1.3699332858837306111e+29];
pub const V_RADII: [f64; 5] = [1e-7, 0.01, 0.37, 2.0, 10.0];
pub const V0_09: [[f64; 2]; 5] = [[0.0029134819562218808994, -0.0046482661275716788574], [0.43667252588985135713, -0.7003181180253199768], [1.5215449827094624901, -3.088323375080913969], [-1.6442220838210401851, -9.1837933865970464175], [-15223.028315108586683, -18615.527814932862046]];
pub const VINF_09: [[f64; 2]; 5] = [[743.6074199728486688, -466.08742584551776131], [5.1172974077888964384, -3.4011487434986002216], [1.190376120827618873, -1.0369187501986598385], [0.19499738333559971501, -0.18715975219818585845], [0.000062282503845813507266, -0.000061691154682440547965]];
pub const U0_09: [[f64; 2]; 5] = [[1383.3364327045990936, -867.05941297253490207], [8.7074229250033650417, -5.0243877897037711058], [-0.61607742828288331869, 3.8162527674959570904], [3.421522159223871633, 16.736546066523819697], [28319.58330903283027, 34630.690817899507626]];
pub const KERNEL_NORM_2_09: f64 = 1.2016351943581111633;

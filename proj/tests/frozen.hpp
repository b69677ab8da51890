#pragma once

// Reference values frozen from an independent NumPy/SciPy implementation of
// the same algorithms (different CARE/Lyapunov solvers, same problem data).
// Agreement tolerances in the tests reflect cross-implementation rounding,
// not algorithmic slack.

namespace frozen {

// LQR gains at theta2 = 150, 60, -90 deg (default weights, measured params).
inline const double kK150[2][4] = {
    {22.359543587421598, 1.2098815026116307, 6.028674406429979, -0.2761854228444342},
    {-0.9992306650735274, 34.45168238962698, -0.43145631706300347, 6.834773878452491}};
inline const double kK60[2][4] = {
    {22.274446542423917, -3.9705577162370242, 11.84341259103304, 2.947918214141781},
    {3.279249264447512, 34.34864577929434, 3.3684056402744593, 5.40643017393695}};
inline const double kKm90[2][4] = {
    {22.295661350930594, -3.4931258689116227, 10.179837427303257, 1.8000198854020837},
    {2.884942432497397, 34.37433294572238, 2.2585255843612617, 6.236146141322051}};

// Lyapunov certificate and input matrix of the 60 deg realization (Q_lyap = I).
inline const double kP60[4][4] = {
    {2.7633387234588036, -1.2711393227649128, 6.9837514759183905e-3, -4.1463782247578860e-3},
    {-1.2711393227649128, 8.1503262093255042, 9.9213331719812767e-2, 3.7053042041807982e-2},
    {6.9837514759183905e-3, 9.9213331719812767e-2, 1.3434508015773419e-1,
     4.0706231121964288e-2},
    {-4.1463782247578860e-3, 3.7053042041807982e-2, 4.0706231121964288e-2,
     4.7312999749585104e-2}};
inline const double kBc60[4][2] = {{7.637634096105998, 3.429513603959513},
                                   {-0.3529743040884237, 4.378247305984988},
                                   {93.13368883294201, -16.25065354204622},
                                   {-16.87603748494587, 125.12260358180389}};

// Prewrapped linearization at theta2 = 90 deg, measured params: -Mbar^-1 Kp.
inline const double kA21At90[2][2] = {{-20.983817280113573, 20.983817280113573},
                                      {20.98381728011357, -72.30263765104601}};

// Per-subcontroller passivity indices on the default 400-point grid.
inline const double kDeltaI[3] = {5.019563485782407e-05, 5.018714421715219e-05,
                                  5.019346101811918e-05};
inline const double kEpsI[3] = {0.0029744090336509595, 7.352767142325027e-05,
                                0.00031719877307415345};

// Scheduling activity extrema over [0, 8.5] at 1 ms resolution.
inline const double kNuInfMatrix = 0.19937998694480963;
inline const double kSigmaPsiBarMatrix = 6.087073191007147;
inline const double kNuInfScalar = 0.45692275567199736;
inline const double kSigmaPsiBarScalar = 1.3130778781991486;

// Composed ISP levels.
inline const double kDeltaHatMatrix = 1.0006312158813081e-05;
inline const double kDeltaHatScalar = 2.2931648235009126e-05;

// RMS tracking metrics (deg, deg, deg/s, deg/s) at step 1e-3, horizon 8.5,
// default config, per mode.
inline const double kRmsUnscheduled[4] = {1.1637208264835297, 1.6097095605562328,
                                          4.678919498299987, 4.45109541852397};
inline const double kRmsScalar[4] = {1.0637951379068844, 1.4296041939915793, 4.28529817525784,
                                     3.8606577633652495};
inline const double kRmsMatrix[4] = {0.4807114912550378, 1.0328564518959558,
                                     1.1706091870290407, 2.9287871989863636};

// Controller-port truncated inner products along the default matrix-mode run:
// {<uc,yc>_T, ||uc||^2_2T, ||yc||^2_2T} at T = 4.25 and T = 8.5.
inline const double kAuditT425[3] = {1.0158726550425417, 0.015743830451031872,
                                     488.2201274283228};
inline const double kAuditT850[3] = {1.463325288796234, 0.025761050369727163,
                                     626.6176489521167};

}  // namespace frozen

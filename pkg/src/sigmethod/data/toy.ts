@problemName toy
@timeStamps false
@univariate false
@dimensions 2
@equalLength true
@seriesLength 16
@classLabel true cw ccw
@data
1.0000,0.9611,0.6985,0.2796,-0.1521,-0.5000,-0.7615,-0.9488,-1.0075,-0.8566,-0.5000,-0.0570,0.3384,0.6397,0.8660,1.0000:0.0500,-0.3733,-0.7484,-0.9915,-1.0434,-0.8910,-0.5723,-0.1622,0.2536,0.6032,0.8410,0.9456,0.9106,0.7379,0.4402,0.0500:cw
1.1079,0.9017,0.4928,0.0206,-0.3948,-0.7265,-0.9835,-1.1173,-1.0358,-0.7150,-0.2551,0.1979,0.5700,0.8655,1.0717,1.1079:-0.2930,-0.7298,-1.0172,-1.1076,-1.0017,-0.7372,-0.3695,0.0441,0.4503,0.7970,1.0301,1.0993,0.9731,0.6573,0.2047,-0.2930:cw
1.0986,0.7223,0.2281,-0.2463,-0.6484,-0.9793,-1.1959,-1.1987,-0.9350,-0.4800,0.0171,0.4563,0.8236,1.1076,1.2299,1.0986:-0.6080,-0.9477,-1.1265,-1.1307,-0.9631,-0.6408,-0.1996,0.2985,0.7672,1.1103,1.2488,1.1473,0.8280,0.3634,-0.1472,-0.6080:cw
0.9583,0.4636,-0.0569,-0.5254,-0.9314,-1.2360,-1.3353,-1.1495,-0.7228,-0.1994,0.2989,0.7370,1.1019,1.3184,1.2786,0.9583:-0.8381,-1.1539,-1.2909,-1.2091,-0.9032,-0.4168,0.1593,0.7072,1.1141,1.3041,1.2549,0.9946,0.5838,0.0950,-0.4009,-0.8381:cw
0.7186,0.1691,-0.3579,-0.8368,-1.2313,-1.4363,-1.3472,-0.9734,-0.4451,0.0999,0.6042,1.0498,1.3656,1.4314,1.1896,0.7186:1.1708,1.3422,1.3020,1.0603,0.6465,0.1125,-0.4637,-0.9816,-1.3364,-1.4470,-1.2833,-0.8786,-0.3204,0.2761,0.8004,1.1708:ccw
0.4250,-0.1482,-0.6942,-1.1772,-1.4934,-1.5172,-1.2207,-0.7115,-0.1362,0.4257,0.9483,1.3649,1.5471,1.4048,0.9828,0.4250:1.3815,1.4849,1.3354,0.9396,0.3570,-0.3047,-0.9124,-1.3434,-1.5180,-1.4167,-1.0768,-0.5725,0.0080,0.5783,1.0597,1.3815:ccw
0.0992,-0.5044,-1.0708,-1.4998,-1.6491,-1.4527,-0.9883,-0.4030,0.2042,0.7966,1.3116,1.6168,1.5924,1.2449,0.7026,0.0992:1.6382,1.5522,1.1743,0.5825,-0.1011,-0.7443,-1.2371,-1.5100,-1.5352,-1.3192,-0.8939,-0.3151,0.3356,0.9527,1.4203,1.6382:ccw
-0.2702,-0.9112,-1.4503,-1.7333,-1.6576,-1.2643,-0.6921,-0.0558,0.5955,1.2027,1.6330,1.7413,1.4928,0.9916,0.3779,-0.2702:1.6796,1.3727,0.8441,0.1941,-0.4726,-1.0593,-1.4822,-1.6728,-1.5871,-1.2202,-0.6203,0.1095,0.8287,1.3930,1.6928,1.6796:ccw

"""Embedded correction tables (generated by tools/gen_rules.py; do not edit).

KR_FOLDED_WEIGHTS[m]: folded Kapur-Rokhlin weights gamma_l + gamma_-l, l = 1..m.
ALPERT_TABLES[l]: (a, nodes, weights) for the log-singular Alpert rule of order l.
"""

KR_FOLDED_WEIGHTS = {
    2: [
        1.825748064736159399,
        -1.325748064736159399,
    ],
    6: [
        4.9673629782877582632,
        -16.205015048591260683,
        25.851537618326387638,
        -22.225994667918829008,
        9.9301049980375378726,
        -1.8179958781415940819,
    ],
    10: [
        7.8324320205687793349,
        -45.651616703747485847,
        145.21688463546776066,
        -290.1348302886378899,
        387.08621625798996619,
        -352.38213835706800717,
        217.24215475193424741,
        -87.077960873829893843,
        20.535842660726346025,
        -2.1669841034038228483,
    ],
}

ALPERT_TABLES = {
    2: (
        1,
        [
            0.15915494309189533577,
        ],
        [
            0.5,
        ],
    ),
    6: (
        3,
        [
            4.0048841949265696177e-3,
            0.077456553733366861324,
            0.39728499935232485938,
            1.0756733529151037443,
            2.003796927111871944,
        ],
        [
            0.016718796911471017151,
            0.16369583714473597011,
            0.49818565697706365444,
            0.83722662455789122024,
            0.98417308440883813806,
        ],
    ),
    10: (
        6,
        [
            1.1750893812273077549e-3,
            0.018770341298312886557,
            0.096864683914268595052,
            0.30048186680028846475,
            0.69013315571733562857,
            1.293695738083658893,
            2.0901877297987795493,
            3.0167193131492114088,
            4.0013697478724863622,
            5.0000256617934229208,
        ],
        [
            4.5607468820842070864e-3,
            0.038106063223847568795,
            0.12938649972895118417,
            0.28843603814088348167,
            0.4958111914344960708,
            0.70771546005945290639,
            0.87419243652850833765,
            0.9661361986515217792,
            0.99578878660787000683,
            0.99986657874238445741,
        ],
    ),
    16: (
        10,
        [
            8.3715298320141132716e-4,
            0.012393827255426369825,
            0.060092907857394677721,
            0.18059912496019279293,
            0.4142832599028030884,
            0.79647477311124298422,
            1.3489938824670588089,
            2.0734716602643950277,
            2.9479049390314938048,
            3.9281292522486117453,
            4.9572030865631116949,
            5.9863601139774942221,
            6.9979577047915192782,
            7.9998887575246223974,
            8.9999987543061196013,
        ],
        [
            3.1909190866262344063e-3,
            0.02423621380426338019,
            0.077401355216530879335,
            0.17048894202863690872,
            0.30291234785113086103,
            0.46522208349146166533,
            0.6401489637096768365,
            0.80512129461810611544,
            0.93624119456986465442,
            1.0143597753690751691,
            1.0351677210536568064,
            1.0203086249846103708,
            1.0047983974415139816,
            1.000395017352309274,
            1.0000071494225368628,
        ],
    ),
}

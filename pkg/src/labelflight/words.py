"""Bundled object-name word list, grouped by initial letter.

Workshop-flavored nouns used to name generated scene objects.  The sampler
draws a letter first, then a word for it, so the initial-letter distribution
is controlled by the letter pool rather than by per-letter word counts.
"""

from __future__ import annotations

WORDS_BY_LETTER: dict[str, tuple[str, ...]] = {
    "a": ("anvil", "awl", "adapter", "axle", "airbrush", "auger", "armature", "antenna",
          "adhesive", "apron", "arbor", "axe", "alternator", "ammeter", "anchor", "aperture",
          "applicator", "atomizer", "actuator", "agitator", "airfoil", "armrest", "arm", "angle"),
    "b": ("bracket", "bolt", "bearing", "beaker", "bellows", "bench", "binder", "blade",
          "blower", "bobbin", "bucket", "burner", "bushing", "buzzer", "brush", "bandsaw",
          "barometer", "battery", "beam", "bevel", "bit", "blowtorch", "bobcat", "boiler"),
    "c": ("caliper", "clamp", "chisel", "chuck", "compass", "coupler", "crank", "crimper",
          "cutter", "cylinder", "cable", "camshaft", "canister", "capacitor", "carburetor",
          "cartridge", "casing", "chain", "charger", "circuit", "cog", "collet", "conduit", "crowbar"),
    "d": ("dowel", "drill", "dial", "diode", "divider", "damper", "decanter", "derrick",
          "detector", "diffuser", "dispenser", "dolly", "dynamo", "drum", "duct", "drawknife",
          "dropper", "dustpan", "dampener", "deburrer", "degausser", "dremel", "drift", "drive"),
    "e": ("easel", "edger", "ejector", "elbow", "electrode", "emitter", "encoder", "engine",
          "epoxy", "extruder", "eyelet", "eyepiece", "extractor", "enclosure", "escapement",
          "etcher", "evaporator", "exhaust", "expander", "eccentric", "elevator", "emery"),
    "f": ("file", "flange", "funnel", "fuse", "fastener", "ferrule", "filter", "fitting",
          "fixture", "flapper", "flask", "flywheel", "forceps", "fork", "former", "faucet",
          "feeler", "fender", "ferrite", "fillet", "flathead", "float", "fluxmeter", "frame"),
    "g": ("gauge", "gasket", "gearbox", "gimbal", "gimlet", "girder", "gouge", "governor",
          "grate", "grinder", "grip", "grommet", "guide", "gusset", "gutter", "gyroscope",
          "generator", "gantry", "gavel", "gearwheel", "glazier", "grapple", "grease", "grille"),
    "h": ("hammer", "hinge", "hose", "hook", "hasp", "heater", "helix", "hoist",
          "holder", "hopper", "housing", "hub", "hygrometer", "hydrometer", "handle", "harness",
          "hatch", "header", "heatsink", "hexkey", "hones", "hood", "horn", "hydrant"),
    "i": ("impeller", "inductor", "injector", "inlet", "insert", "insulator", "intake", "iris",
          "idler", "igniter", "impactor", "indicator", "inverter", "isolator", "inkwell",
          "inclinometer", "interlock", "ingot", "iron", "interface", "ionizer", "isograph"),
    "j": ("jack", "jig", "jointer", "journal", "junction", "jaw", "jet", "jib",
          "jumper", "jar", "jigsaw", "jacket", "joiner", "joist", "jug", "juicer",
          "jackscrew", "jamb", "jackhammer", "jewel"),
    "k": ("key", "keel", "kettle", "kiln", "knob", "knocker", "knurl", "keeper",
          "keyway", "kickstand", "kingpin", "kit", "knife", "knuckle", "keyboard", "keypad",
          "keystone", "kite", "kerf", "keg"),
    "l": ("lathe", "lever", "linkage", "latch", "ladle", "lamp", "lanyard", "lid",
          "lifter", "light", "limiter", "liner", "lock", "loom", "louver", "lubricator",
          "lug", "lantern", "ledger", "lens", "level", "lockwasher", "lanolin", "loupe"),
    "m": ("mallet", "mandrel", "manifold", "micrometer", "mixer", "motor", "mount", "muffler",
          "magnet", "magnifier", "mask", "mast", "matrix", "meter", "mill", "mold",
          "monitor", "mortiser", "module", "manometer", "marker", "microscope", "mitre", "mower"),
    "n": ("nozzle", "nut", "nailer", "needle", "nipple", "notcher", "nameplate", "net",
          "nib", "node", "notch", "nugget", "number", "nutcracker", "nylon", "nacelle",
          "nave", "notebook", "nutdriver", "numerator"),
    "o": ("oiler", "outlet", "oscillator", "oven", "overlay", "oar", "octagon", "offset",
          "ohmmeter", "opener", "orifice", "oilcan", "orbiter", "ornament", "outrigger",
          "overhang", "oxbow", "oxide", "oscilloscope", "overflow"),
    "p": ("pallet", "panel", "pedal", "pin", "pipe", "piston", "pivot", "plane",
          "plate", "pliers", "plug", "plunger", "pointer", "press", "probe", "propeller",
          "pulley", "pump", "punch", "pushrod", "pyrometer", "pawl", "pick", "pinion"),
    "q": ("quadrant", "quill", "quiver", "quartz", "queue", "quern", "quoin", "quarry",
          "quart", "quasar", "quay", "quilt", "quince", "quintet", "quorum", "quota",
          "quotient", "quartzite", "quencher", "quickdraw"),
    "r": ("ratchet", "reamer", "regulator", "relay", "rivet", "rod", "roller", "rotor",
          "router", "rudder", "rheostat", "ribbon", "rig", "rim", "ring", "rocker",
          "rasp", "reel", "retainer", "rake", "receiver", "rectifier", "resistor", "rung"),
    "s": ("sander", "saw", "scale", "scraper", "screw", "seal", "sensor", "shaft",
          "shim", "sleeve", "socket", "solder", "spacer", "spindle", "spring", "sprocket",
          "stud", "switch", "swivel", "shear", "siphon", "solenoid", "spanner", "stapler"),
    "t": ("tachometer", "tap", "template", "tensioner", "terminal", "thimble", "throttle", "timer",
          "tong", "torch", "transformer", "trolley", "trowel", "tube", "turbine", "turret",
          "tweezers", "tripod", "tumbler", "toggle", "tool", "torque", "trammel", "trivet"),
    "u": ("union", "upright", "unit", "urn", "underlay", "uptake", "umbrella", "undercarriage",
          "underframe", "unicycle", "ultrasound", "updraft", "upholstery", "utensil", "ukulele",
          "uplink", "upload", "urchin", "uplight", "upset"),
    "v": ("valve", "vane", "vise", "vent", "venturi", "vessel", "vial", "vice",
          "viewer", "visor", "voltmeter", "vortex", "vacuum", "vault", "vector", "veneer",
          "ventilator", "verifier", "vertex", "viaduct"),
    "w": ("washer", "wedge", "wheel", "winch", "wire", "wrench", "waveguide", "weight",
          "welder", "wick", "windlass", "workbench", "wattmeter", "whisk", "wheelbarrow",
          "window", "windmill", "winder", "wingnut", "wrecker"),
    "x": ("xylophone", "xenon", "xylem", "xebec", "xiphoid", "xylograph", "xerograph", "xenolith",
          "xray", "xenotime"),
    "y": ("yardstick", "yoke", "yarn", "yawl", "yardarm", "yoyo", "yeoman", "yew",
          "yurt", "yardage", "yawmeter", "yolk", "yucca", "yardman", "yarder", "yearbook"),
    "z": ("zipper", "zinc", "zigzag", "zither", "zeppelin", "zone", "zenith", "zircon",
          "zest", "zoom", "zerk", "zincograph", "zyglo", "zonegauge"),
}

ALL_LETTERS = "".join(sorted(WORDS_BY_LETTER))

WORDS: tuple[str, ...] = tuple(word for letter in sorted(WORDS_BY_LETTER) for word in WORDS_BY_LETTER[letter])

#!/usr/bin/env python3
"""Writes data/lexicon/earth_science.json from the table below.

Row format: id | preferred label | lemmas (;-separated) | domains (;-separated)
"""
import json
import pathlib
import sys

ROWS = """
monitoring|Monitoring|monitoring;monitor;surveillance|Geology
Segmentation and Reassembly|Segmentation and Reassembly|segmentation;image segmentation;segmentation and reassembly;reassembly|Graphic
reservoir|reservoir|reservoir;artificial lake;man-made lake|Hydrology
reservoir host|reservoir host|reservoir;reservoir host;infection reservoir|Biology
change detection|change detection|change detection;change analysis|Remote Sensing
satellite image|satellite image|satellite image;satellite imagery;satellite scene|Remote Sensing
image archive|image archive|image archive;image catalogue|Computing
algorithm|algorithm|algorithm;procedure|Computing
image processing|image processing|image processing;image analysis|Graphic
pixel|pixel|pixel;picture element|Graphic
raster|raster|raster;grid|Graphic
classification|classification|classification;classifier|Statistics
land cover|land cover|land cover;land use|Geography
region|region|region;area;zone|Geography
landslide|landslide|landslide;mudslide;slope failure|Geology
erosion|erosion|erosion;weathering|Geology
sediment|sediment|sediment;sedimentation;deposit|Geology
rock|rock|rock;bedrock;outcrop|Geology
mineral|mineral|mineral;crystal|Geology
fault|fault|fault;fault line;fracture|Geology
tectonics|tectonics|tectonics;plate tectonics;tectonic plate|Geology
crust|crust|crust;lithosphere|Geology
mantle|mantle|mantle;asthenosphere|Geology
stratigraphy|stratigraphy|stratigraphy;stratum;strata|Geology
geomorphology|geomorphology|geomorphology;landform|Geology
groundwater|groundwater|groundwater;aquifer;water table|Hydrology
river|river|river;stream;watercourse|Hydrology
flood|flood|flood;flooding;inundation|Hydrology
drought|drought|drought;dry spell|Climatology
precipitation|precipitation|precipitation;rainfall;rain|Meteorology
snow|snow|snow;snowfall;snowpack|Meteorology
glacier|glacier|glacier;ice sheet;ice cap|Glaciology
permafrost|permafrost|permafrost;frozen ground|Glaciology
sea ice|sea ice|sea ice;pack ice|Glaciology
watershed|watershed|watershed;catchment;drainage basin|Hydrology
runoff|runoff|runoff;surface runoff|Hydrology
evaporation|evaporation|evaporation;evapotranspiration|Hydrology
lake|lake|lake;pond|Limnology
wetland|wetland|wetland;marsh;swamp|Ecology
water quality|water quality|water quality;water pollution|Hydrology
salinity|salinity|salinity;salt content|Oceanography
ocean current|ocean current|ocean current;current;gyre|Oceanography
tide|tide|tide;tidal cycle|Oceanography
wave|wave|wave;swell|Oceanography
sea level|sea level|sea level;sea-level rise|Oceanography
sea surface temperature|sea surface temperature|sea surface temperature;sst|Oceanography
upwelling|upwelling|upwelling|Oceanography
seabed|seabed|seabed;seafloor;sea floor;ocean floor|Marine Geology
bathymetry|bathymetry|bathymetry;depth sounding|Marine Geology
continental shelf|continental shelf|continental shelf;shelf|Marine Geology
coast|coast|coast;coastline;shore;shoreline|Geography
estuary|estuary|estuary;river mouth|Oceanography
lagoon|lagoon|lagoon|Oceanography
plankton|plankton|plankton;phytoplankton;zooplankton|Marine Biology
algae|algae|algae;seaweed;macroalgae|Marine Botany
seagrass|seagrass|seagrass;posidonia;eelgrass|Marine Botany
coral reef|coral reef|coral reef;coral|Marine Biology
whale|whale|whale;cetacean;dolphin|Cetology
fish|fish|fish;fishes|Marine Biology
fishery|fishery|fishery;fishing;fish stock|Marine Biology
marine litter|marine litter|marine litter;marine debris;plastic debris;microplastic|Oceanography
pollution|pollution|pollution;contamination;pollutant|Environment
oil spill|oil spill|oil spill;oil slick|Environment
habitat|habitat|habitat;biotope|Ecology
biodiversity|biodiversity|biodiversity;species richness|Ecology
species|species|species;taxon|Biology
population|population|population;abundance|Ecology
ecosystem|ecosystem|ecosystem;ecological system|Ecology
vegetation|vegetation|vegetation;plant cover;canopy|Ecology
forest|forest|forest;woodland|Ecology
soil|soil|soil;topsoil|Agriculture
crop|crop|crop;harvest;yield|Agriculture
irrigation|irrigation|irrigation|Agriculture
volcano|volcano|volcano;volcanic edifice;stratovolcano|Volcanology
eruption|eruption|eruption;volcanic eruption|Volcanology
magma|magma|magma;molten rock|Volcanology
lava|lava|lava;lava flow|Volcanology
ash|ash|ash;volcanic ash;tephra|Volcanology
caldera|caldera|caldera;crater|Volcanology
degassing|degassing|degassing;volcanic gas;fumarole|Volcanology
deformation|deformation|deformation;ground deformation;uplift;subsidence|Geodesy
interferometry|interferometry|interferometry;insar;interferogram|Remote Sensing
gps|GPS|gps;gnss;global positioning system|Geodesy
earthquake|earthquake|earthquake;quake;seismic event|Seismology
seismic wave|seismic wave|seismic wave;p-wave;s-wave|Seismology
seismometer|seismometer|seismometer;seismograph|Seismology
aftershock|aftershock|aftershock|Seismology
magnitude|magnitude|magnitude;richter scale|Seismology
epicenter|epicenter|epicenter;epicentre;hypocenter|Seismology
tsunami|tsunami|tsunami;tidal wave|Seismology
seismic hazard|seismic hazard|seismic hazard;seismic risk|Seismology
hazard|hazard|hazard;natural hazard;risk|Geology
atmosphere|atmosphere|atmosphere;air|Meteorology
temperature|temperature|temperature;heat|Physics
wind|wind|wind;gust|Meteorology
storm|storm|storm;cyclone;hurricane;typhoon|Meteorology
cloud|cloud|cloud;cloud cover|Meteorology
humidity|humidity|humidity;moisture|Meteorology
air pressure|air pressure|air pressure;atmospheric pressure;barometric pressure|Meteorology
weather|weather|weather;weather forecast|Meteorology
climate|climate|climate;climatic conditions|Climatology
climate change|climate change|climate change;global warming|Climatology
greenhouse gas|greenhouse gas|greenhouse gas;carbon dioxide;methane|Climatology
carbon cycle|carbon cycle|carbon cycle;carbon sink|Climatology
aerosol|aerosol|aerosol;particulate matter|Meteorology
ozone|ozone|ozone;ozone layer|Chemistry
radiation|radiation|radiation;solar radiation;irradiance|Physics
albedo|albedo|albedo;reflectance|Remote Sensing
remote sensing|remote sensing|remote sensing;earth observation|Remote Sensing
satellite|satellite|satellite;spacecraft|Remote Sensing
sentinel|Sentinel mission|sentinel;sentinel-1;sentinel-2|Remote Sensing
radar|radar|radar;synthetic aperture radar;sar|Remote Sensing
lidar|lidar|lidar;laser scanning|Remote Sensing
spectral band|spectral band|spectral band;multispectral;hyperspectral|Remote Sensing
resolution|resolution|resolution;spatial resolution|Remote Sensing
orthophoto|orthophoto|orthophoto;aerial photograph;aerial image|Remote Sensing
map|map|map;mapping;cartography|Geography
coordinate|coordinate|coordinate;latitude;longitude|Geography
elevation|elevation|elevation;altitude;digital elevation model;dem|Geography
topography|topography|topography;relief;terrain|Geography
geographic information system|geographic information system|geographic information system;gis|Computing
time series|time series|time series;temporal series|Statistics
trend|trend|trend;tendency|Statistics
anomaly|anomaly|anomaly;outlier|Statistics
regression|regression|regression;linear regression|Statistics
correlation|correlation|correlation;covariance|Statistics
uncertainty|uncertainty|uncertainty;error bar;confidence interval|Statistics
sampling|sampling|sampling;sample|Statistics
interpolation|interpolation|interpolation;kriging|Statistics
model|model|model;simulation;numerical model|Computing
forecast|forecast|forecast;prediction|Statistics
calibration|calibration|calibration;validation|Physics
sensor|sensor|sensor;probe;instrument|Physics
buoy|buoy|buoy;mooring|Oceanography
station|station|station;observatory|Geography
network|network|network;sensor network|Computing
workflow|workflow|workflow;pipeline;processing chain|Computing
software|software|software;program;code|Computing
database|database|database;data base;repository|Computing
dataset|dataset|dataset;data set;data collection|Computing
metadata|metadata|metadata;meta data|Computing
data format|data format|data format;file format;netcdf;hdf|Computing
web service|web service|web service;api;endpoint|Computing
cloud computing|cloud computing|cloud computing;virtual machine|Computing
visualization|visualization|visualization;visualisation;plot;chart|Graphic
image|image|image;picture;photograph|Graphic
color|color|color;colour|Graphic
contrast|contrast|contrast;brightness|Graphic
filter|filter|filter;filtering;smoothing|Graphic
edge detection|edge detection|edge detection;contour|Graphic
texture|texture|texture|Graphic
feature extraction|feature extraction|feature extraction;feature detection|Computing
machine learning|machine learning|machine learning;neural network;deep learning|Computing
exploitation|exploitation|exploitation;usage;utilisation|Economics
archive|archive|archive;archiving;long-term preservation|Computing
research object|research object|research object;research objects|Computing
publication|publication|publication;paper;article|Bibliography
citation|citation|citation;reference|Bibliography
hypothesis|hypothesis|hypothesis;assumption|Research
conclusion|conclusion|conclusion;finding;result|Research
experiment|experiment|experiment;trial|Research
observation|observation|observation;measurement|Research
field campaign|field campaign|field campaign;fieldwork;survey|Research
laboratory|laboratory|laboratory;lab|Research
collaboration|collaboration|collaboration;cooperation|Research
reproducibility|reproducibility|reproducibility;replicability|Research
provenance|provenance|provenance;lineage|Computing
license|license|license;licence|Law
policy|policy|policy;regulation;directive|Law
management|management|management;governance|Economics
cost|cost|cost;expense;budget|Economics
energy|energy|energy;power|Physics
hydropower|hydropower|hydropower;hydroelectric power|Energy
geothermal energy|geothermal energy|geothermal energy;geothermal|Energy
mining|mining|mining;quarry|Geology
oil|oil|oil;petroleum;hydrocarbon|Geology
gas|gas|natural gas|Geology
nutrient|nutrient|nutrient;nitrate;phosphate|Chemistry
oxygen|oxygen|oxygen;dissolved oxygen;hypoxia|Chemistry
acidification|acidification|acidification;ocean acidification;ph|Chemistry
chlorophyll|chlorophyll|chlorophyll;chlorophyll-a|Marine Botany
photosynthesis|photosynthesis|photosynthesis;primary production|Biology
migration|migration|migration;migratory route|Ecology
invasive species|invasive species|invasive species;alien species|Ecology
protected area|protected area|protected area;marine protected area;nature reserve|Ecology
conservation|conservation|conservation;restoration|Ecology
urban area|urban area|urban area;city;town|Geography
infrastructure|infrastructure|infrastructure;road;bridge|Engineering
dam|dam|dam;barrage|Engineering
port|port|port;harbour;harbor|Engineering
shipping|shipping|shipping;vessel;ship|Engineering
population exposure|population exposure|population exposure;exposure|Geography
early warning|early warning|early warning;alert system|Geology
emergency|emergency|emergency;disaster;crisis|Geography
recovery|recovery|recovery;reconstruction|Geography
volcanic unrest|volcanic unrest|volcanic unrest;unrest|Volcanology
geochemistry|geochemistry|geochemistry;isotope|Chemistry
geophysics|geophysics|geophysics;gravimetry;magnetometry|Physics
astronomy|astronomy|astronomy;astrophysics|Astronomy
space weather|space weather|space weather;solar wind;geomagnetic storm|Astronomy
planet|planet|planet;planetary body|Astronomy
moon|moon|moon;lunar|Astronomy
sun|sun|sun;solar|Astronomy
spring|spring|spring;hot spring|Hydrology
cave|cave|cave;karst|Geology
dune|dune|dune;sand dune|Geology
desert|desert|desert;arid region|Geography
mountain|mountain|mountain;peak;ridge|Geography
island|island|island;archipelago|Geography
basin|basin|basin;sedimentary basin|Geology
delta|delta|delta;river delta|Hydrology
"""

STOPWORDS = """a about above after again against all also am an and any are as at be because been before being below
between both but by can could did do does doing down during each few for from further had has have having he her here
hers herself him himself his how i if in into is it its itself just me more most my myself no nor not now of off on
once only or other our ours ourselves out over own same she should so some such than that the their theirs them
themselves then there these they this those through to too under until up very was we were what when where which while
who whom why will with would you your yours yourself yourselves within without via per using used use based new two one
three four five may might must shall each every""".split()

GAZETTEER = {
    "Black Sea": "Place", "Mediterranean Sea": "Place", "Adriatic Sea": "Place", "Venice Lagoon": "Place",
    "Atlantic Ocean": "Place", "Arctic Ocean": "Place", "Mount Etna": "Place", "Vesuvius": "Place",
    "Campi Flegrei": "Place", "Iceland": "Place", "Italy": "Place", "Europe": "Place", "Hawaii": "Place",
    "UN": "Organization", "ESA": "Organization", "NASA": "Organization", "INGV": "Organization",
    "CNR": "Organization", "NEON": "Organization", "UNAVCO": "Organization", "Copernicus": "Organization",
    "European Space Agency": "Organization", "Elizabeth Mary": "Person",
}


def main(out):
    concepts = {}
    for line in ROWS.strip().splitlines():
        cid, label, lemmas, domains = [part.strip() for part in line.split("|")]
        if cid in concepts:
            raise SystemExit(f"duplicate concept {cid}")
        concepts[cid] = {"label": label, "lemmas": lemmas.split(";"), "domains": domains.split(";")}
    doc = {"concepts": concepts, "stopwords": sorted(set(STOPWORDS)), "gazetteer": GAZETTEER}
    pathlib.Path(out).write_text(json.dumps(doc, indent=1, ensure_ascii=False) + "\n", encoding="utf-8")
    print(f"{len(concepts)} concepts -> {out}")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else "data/lexicon/earth_science.json")

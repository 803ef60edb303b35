// Shared corn fixtures: a crop requirement table whose thresholds reproduce
// the published SPL ratings, the six SPL observation rows, and the full
// criteria/score hierarchy.
#pragma once

namespace fixtures {

inline const char* kCornCropTableJson = R"json({
  "crop": "corn",
  "characteristics": [
    {"name": "Annual average temperature (C)", "group": "t", "kind": "numeric",
     "classes": [{"class": "S1", "intervals": [[20, 30]]},
                 {"class": "S2", "intervals": [[15, 20], [30, 35]]},
                 {"class": "S3", "intervals": [[10, 15], [35, 40]]}]},
    {"name": "Dry month (<75mm)", "group": "w", "kind": "numeric",
     "classes": [{"class": "S1", "intervals": [[0, 7]]},
                 {"class": "S2", "intervals": [[7, 8]]},
                 {"class": "S3", "intervals": [[8, 9]]}]},
    {"name": "Annual rainfall (mm)", "group": "w", "kind": "numeric",
     "classes": [{"class": "S1", "intervals": [[1200, 2500]]},
                 {"class": "S2", "intervals": [[900, 1200], [2500, 3000]]},
                 {"class": "S3", "intervals": [[600, 900], [3000, 4000]]}]},
    {"name": "Humidity (%)", "group": "w", "kind": "numeric",
     "classes": [{"class": "S1", "intervals": [[50, 90]]},
                 {"class": "S2", "intervals": [[42, 50], [90, 95]]},
                 {"class": "S3", "intervals": [[36, 42], [95, 100]]}]},
    {"name": "Soil drainage", "group": "r", "kind": "categorical",
     "classes": {"Good": "S1", "Moderate": "S1", "Somewhat Hampered": "S2",
                 "Hampered": "S3", "Very Hampered": "N"}},
    {"name": "Soil texture", "group": "r", "kind": "categorical",
     "classes": {"Liat": "S1", "Clay Loam": "S1", "Sandy Loam": "S2", "Sand": "S3"}},
    {"name": "Effective depth (cm)", "group": "r", "kind": "numeric",
     "classes": [{"class": "S1", "intervals": [[50, null]]},
                 {"class": "S2", "intervals": [[40, 50]]},
                 {"class": "S3", "intervals": [[25, 40]]}]},
    {"name": "KTK (cmol/kg)", "group": "f", "kind": "numeric",
     "classes": [{"class": "S1", "intervals": [[17, null]]},
                 {"class": "S2", "intervals": [[5, 17]]},
                 {"class": "S3", "intervals": [[0, 5]]}]},
    {"name": "Base Saturation (%)", "group": "f", "kind": "numeric",
     "classes": [{"class": "S1", "intervals": [[50, 100]]},
                 {"class": "S2", "intervals": [[35, 50]]},
                 {"class": "S3", "intervals": [[20, 35]]}]},
    {"name": "Soil pH", "group": "f", "kind": "numeric",
     "classes": [{"class": "S1", "intervals": [[7.5, 8.2]]},
                 {"class": "S2", "intervals": [[7.0, 7.5]]},
                 {"class": "S3", "intervals": [[5.5, 7.0]]}]},
    {"name": "C-Organic (%)", "group": "f", "kind": "numeric",
     "classes": [{"class": "S1", "intervals": [[0.8, null]]},
                 {"class": "S2", "intervals": [[0.4, 0.8]]},
                 {"class": "S3", "intervals": [[0.1, 0.4]]}]},
    {"name": "N-Total (%)", "group": "n", "kind": "numeric",
     "classes": [{"class": "S1", "intervals": [[0.1, null]]},
                 {"class": "S2", "intervals": [[0.05, 0.1]]},
                 {"class": "S3", "intervals": [[0.02, 0.05]]}]},
    {"name": "P2O5 (mg/100g)", "group": "n", "kind": "numeric",
     "classes": [{"class": "S1", "intervals": [[16, null]]},
                 {"class": "S2", "intervals": [[8, 16]]},
                 {"class": "S3", "intervals": [[3, 8]]}]},
    {"name": "K2O (me/100g)", "group": "n", "kind": "numeric",
     "classes": [{"class": "S2", "intervals": [[0.1, 0.4]]},
                 {"class": "S3", "intervals": [[0.02, 0.1], [0.4, 0.6]]}]},
    {"name": "Danger of erosion", "group": "e", "kind": "categorical",
     "classes": {"Very Light": "S1", "Light": "S2", "Moderate": "S3", "Heavy": "N"}},
    {"name": "Slope (%)", "group": "e", "kind": "categorical",
     "classes": {"< 8 %": "S1", "8-15 %": "S2", "15-30 %": "S3", "> 30 %": "N"}},
    {"name": "Flood danger", "group": "b", "kind": "categorical",
     "classes": {"F0": "S1", "F1": "S2", "F2": "S3", "F3": "N"}}
  ]
})json";

inline const char* kSplObservationsCsv =
    "unit_id,Annual average temperature (C),Dry month (<75mm),Annual rainfall (mm),"
    "Humidity (%),Soil drainage,Soil texture,Effective depth (cm),KTK (cmol/kg),"
    "Base Saturation (%),Soil pH,C-Organic (%),N-Total (%),P2O5 (mg/100g),K2O (me/100g),"
    "Danger of erosion,Slope (%),Flood danger\n"
    "SPL 1,25.8,3,1872.8,82.4,Hampered,Liat,50,25.21,30,6.01,1.57,0.22,10.42,0.33,"
    "Very Light,< 8 %,F0\n"
    "SPL 2,25.8,3,1872.8,82.4,Hampered,Liat,50,28.42,21,5.98,0.87,0.18,9.6,0.44,"
    "Very Light,< 8 %,F0\n"
    "SPL 3,25.8,3,1872.8,82.4,Hampered,Liat,50,24.53,33,6.12,1.68,0.24,14.71,0.34,"
    "Very Light,< 8 %,F0\n"
    "SPL 4,25.8,3,1872.8,82.4,Hampered,Liat,50,24.86,35,6.85,2.24,0.31,15.12,0.14,"
    "Very Light,< 8 %,F0\n"
    "SPL 5,25.8,3,1872.8,82.4,Hampered,Liat,50,25.27,22,5.68,0.84,0.17,10.48,0.21,"
    "Very Light,< 8 %,F0\n"
    "SPL 6,25.8,3,1872.8,82.4,Hampered,Liat,50,26.2,30,6.4,1.96,0.23,10.07,0.36,"
    "Very Light,< 8 %,F0\n";

inline const char* kHierarchyJson = R"json({
  "aspects": [
    {"name": "Ecological", "weight": 0.46, "subcriteria": [
      {"name": "Fertilization", "score": 0.47, "classes": [
        {"label": "Not Fertilization", "value": 0.06},
        {"label": "Less Fertilization", "value": 0.22},
        {"label": "Great Fertilization", "value": 0.72}]},
      {"name": "Use of Organic Ingredients", "score": 0.21, "classes": [
        {"label": "Not Use", "value": 0.05},
        {"label": "Less Use", "value": 0.21},
        {"label": "Many Use", "value": 0.73}]},
      {"name": "Soil Organic C Nutrient Suitability", "score": 0.32, "classes": [
        {"label": "Not Appropriate", "value": 0.06},
        {"label": "Suitable enough", "value": 0.19},
        {"label": "Suitable", "value": 0.75}]}
    ]},
    {"name": "Economic", "weight": 0.31, "subcriteria": [
      {"name": "Profit", "score": 0.33, "classes": [
        {"label": "Low", "value": 0.12},
        {"label": "medium", "value": 0.31},
        {"label": "High", "value": 0.57}]},
      {"name": "Production per hectare", "score": 0.27, "classes": [
        {"label": "< 3 tons", "value": 0.16},
        {"label": "3-6 tons", "value": 0.23},
        {"label": "> 6 tons", "value": 0.61}]},
      {"name": "Sales per hectare", "score": 0.17, "classes": [
        {"label": "< 5 million", "value": 0.21},
        {"label": "5-10 million", "value": 0.32},
        {"label": "> 10 million", "value": 0.57}]},
      {"name": "Farmer's income per month", "score": 0.23, "classes": [
        {"label": "< 3 million", "value": 0.23},
        {"label": "3 - 6 million", "value": 0.36},
        {"label": "> 6 million", "value": 0.41}]}
    ]},
    {"name": "Social", "weight": 0.23, "subcriteria": [
      {"name": "Farmer welfare level", "score": 0.27, "classes": [
        {"label": "Low", "value": 0.16},
        {"label": "medium", "value": 0.28},
        {"label": "High", "value": 0.56}]},
      {"name": "Involvement of women in agricultural business", "score": 0.23, "classes": [
        {"label": "Less Involved", "value": 0.15},
        {"label": "Involved", "value": 0.27},
        {"label": "Very Involved", "value": 0.58}]},
      {"name": "Level of education", "score": 0.28, "classes": [
        {"label": "SD", "value": 0.14},
        {"label": "SMP-SMA", "value": 0.23},
        {"label": "Bachelor", "value": 0.63}]},
      {"name": "Land Ownership Status", "score": 0.22, "classes": [
        {"label": "Farm Workers", "value": 0.11},
        {"label": "Land Rent", "value": 0.31},
        {"label": "Land owner", "value": 0.58}]}
    ]}
  ]
})json";

} // namespace fixtures

#!/usr/bin/env python3
"""Regenerates the synthetic fixture world under fixtures/.

Everything here is invented: sites use example.* hosts (plus three real
fact-checking hostnames so the domain filter has something to catch), people
and agencies are fictional. Run from the repository root:

    python3 tools/fixtures/make_fixtures.py
"""
import json
import math
import os
import random
from pathlib import Path

from PIL import Image, ImageDraw

ROOT = Path(__file__).resolve().parents[2] / "fixtures"
WEB = ROOT / "web"
MOCK = ROOT / "mock"
IMAGES = ROOT / "images"

Q = {
    "source": "Who is the source/author of the image?",
    "date": "When was the image taken?",
    "location": "Where was the image taken?",
    "motivation": "Why was the image taken?",
}
ANNOTATION_MARKER = "You are an assistant helping fact-checkers"
REPAIR_MARKER = "Your previous reply was not valid JSON"


def d(y, m=None, dd=None):
    return {"year": y, "month": m, "day": dd}


# --------------------------------------------------------------------------
# Web pages

pages = {}  # url -> (filename, status, content_type)


def page_html(title, site, author=None, date=None, desc=None, paragraphs=(), images=(), lang="en",
              date_style="meta", extra_head=""):
    head = [f"<title>{title} | {site}</title>", f'<meta property="og:title" content="{title}">',
            f'<meta property="og:site_name" content="{site}">']
    if desc:
        head.append(f'<meta name="description" content="{desc}">')
    if author:
        head.append(f'<meta name="author" content="{author}">')
    if date and date_style == "meta":
        head.append(f'<meta property="article:published_time" content="{date}">')
    body = [f"<h1>{title}</h1>"]
    if date and date_style == "time":
        body.append(f'<time datetime="{date}">{date}</time>')
    for src, cap in images[:1]:
        body.append(f'<figure><img src="{src}" alt="{cap}"><figcaption>{cap}</figcaption></figure>')
    body += [f"<p>{p}</p>" for p in paragraphs]
    for src, cap in images[1:]:
        body.append(f'<figure><img src="{src}" alt="{cap}"><figcaption>{cap}</figcaption></figure>')
    return (f'<!DOCTYPE html>\n<html lang="{lang}">\n<head>\n<meta charset="utf-8">\n' + "\n".join(head) + extra_head
            + "\n</head>\n<body>\n"
            + '<nav class="menu"><a href="/">Home</a> <a href="/world">World</a> <a href="/about">About</a></nav>\n'
            + "<article>\n" + "\n".join(body) + "\n</article>\n"
            + '<aside class="sidebar"><a href="/popular">Most popular</a> <a href="/newsletter">Newsletter</a></aside>\n'
            + f"<footer>&copy; {site}</footer>\n</body>\n</html>\n")


def add_page(url, html, status=200, content_type="text/html"):
    name = url.split("://", 1)[1].replace("/", "_").replace(".", "-").strip("_") + ".html"
    (WEB / "pages").mkdir(parents=True, exist_ok=True)
    (WEB / "pages" / name).write_text(html, encoding="utf-8")
    pages[url] = {"file": "pages/" + name, "status": status, "content_type": content_type}


# --------------------------------------------------------------------------
# Cases

cases = []
ris = {}
chat_rules = []
labels = {}


def case(id, fc_date, split, image_type, gold, claimed, strategies, marker, evidence, answers, original=None):
    cases.append({
        "id": id,
        "image_ref": f"images/{id}.png",
        "fc_article_url": f"https://factly.in/fake-news/{id}-photo-fact-check/",
        "fc_publication_date": fc_date,
        "claimed": claimed,
        "gold": gold,
        "image_type": image_type,
        "verification_strategies": strategies,
        "split": split,
        "original_image_ref": original,
    })
    ris[f"{id}.png"] = {"results": [{"page_url": e[0], "match_kind": e[1], "matched_image_urls": e[2]}
                                     for e in evidence]}
    # Text-evidence rules keyed on the case marker, image rules on the query image.
    for pillar, ans in answers.get("text", {}).items():
        rule = {"contains": [Q[pillar], marker], "text": ans}
        if ans == "REFUSED":
            rule = {"contains": [Q[pillar], marker], "text": "", "refused": True}
        chat_rules.append(rule)
    for pillar, ans in answers.get("image", {}).items():
        image_rules.append({"contains": [Q[pillar]], "image": f"{answers.get('image_key', id)}.png", "text": ans})


def gold(prov, source, dates, locs, motivation):
    return {"provenance": prov, "source": source, "date": dates,
            "location": [{"text": l, "coords": None, "gazetteer_id": None} for l in locs], "motivation": motivation}


def claimed(date=None, loc=None, claimant=None, mot=None):
    return {"claimed_date": date, "claimed_location": loc, "claimant": claimant, "claimant_motivation": mot}


image_rules = []

# case-01: flood photo reused for a different city.
add_page("https://lakeside.example.com/news/2013/flood", page_html(
    "Flooded streets after record rain", "Lakeside Daily", "Dana Reyes", "2013-04-18T14:05:00Z",
    "Heavy rain flooded several Chicago neighborhoods on Thursday.",
    ["Residents waded through knee-deep water on Thursday after a lakefront cloudburst dropped more than five inches "
     "of rain on Chicago's west side.",
     "Photographer Dana Reyes captured the scene at a flooded intersection for Lakeside Daily.",
     "City officials opened two shelters and urged drivers to stay off the roads."],
    [("/media/flood-street.jpg", "A resident crosses a flooded intersection in Chicago on April 18, 2013.")]))
add_page("https://weatherblog.example.org/2013/04/chicago-rain", page_html(
    "Chicago rain totals break April record", "Weather Notes", "Sam Ortiz", "2013-04-20",
    "A look back at the lakefront cloudburst.",
    ["The lakefront cloudburst of April 18 set a new daily rainfall record for Chicago.",
     "Lakeside Daily published the most widely shared flood photograph of the day."],
    [("https://lakeside.example.com/media/flood-street.jpg", "Flooded intersection, Chicago")]))
add_page("https://factly.in/fake-news/houston-flood-photo/", page_html(
    "Old photo of a flood shared as Houston 2021", "FACTLY", "Factly Team", "2021-03-12",
    "The lakefront cloudburst photo is from 2013.",
    ["The viral lakefront cloudburst photo is not from Houston."]))
add_page("https://viral.example.net/houston-storm-2021", page_html(
    "Houston underwater after storm", "Viral Daily", None, "2021-03-15",
    "Shocking pictures from Houston.", ["Share this lakefront cloudburst picture now."]))
case("case-01", d(2021, 3, 10), "train", "out_of_context",
     gold("Yes", "Dana Reyes, Lakeside Daily", [d(2013, 4, 18)], ["Chicago"],
          "To report on the flooding in Chicago."),
     claimed(d(2021, 2), "Houston, Texas", "A Facebook page", "To show storm damage in Houston"),
     ["reverse_image_search"], "lakefront cloudburst",
     [("https://lakeside.example.com/news/2013/flood", "full", ["https://lakeside.example.com/media/flood-street.jpg"]),
      ("https://weatherblog.example.org/2013/04/chicago-rain", "partial", []),
      ("https://factly.in/fake-news/houston-flood-photo/", "full", []),
      ("https://viral.example.net/houston-storm-2021", "full", [])],
     {"text": {"source": "Dana Reyes for Lakeside Daily", "date": "April 18, 2013", "location": "Chicago, Illinois",
               "motivation": "To report on the flooding in Chicago."},
      "image": {"location": "Houston, Texas"}})

# case-02: cargo plane evacuation photo.
add_page("https://airmobility.example.mil/news/haiyan-airlift", page_html(
    "Airmen evacuate families after typhoon", "Air Mobility News", "SSgt. Kim Alvarez", "2013-11-18",
    "Relief flights carried hundreds of residents to safety.",
    ["Hundreds of residents sat on the floor of a cargo hold during a typhoon airlift out of Tacloban on Nov. 17, "
     "2013.", "The image was taken by SSgt. Kim Alvarez of the U.S. Air Force during relief operations in the "
     "Philippines."],
    [("/img/haiyan-airlift.jpg", "Evacuees aboard a U.S. Air Force cargo plane, November 17, 2013.")]))
add_page("https://pesacheck.org/photo-kabul-plane", page_html(
    "No, this photo does not show an evacuation from Kabul", "PesaCheck", None, "2021-08-30",
    "PesaCheck looked into a typhoon airlift photo.", ["The typhoon airlift image is from the Philippines."]))
add_page("https://history.example.com/typhoon-2013-gallery", page_html(
    "Typhoon Haiyan in photos", "History Gallery", None, None, None,
    ["A typhoon airlift gallery collecting the most shared photographs."],
    [("https://airmobility.example.mil/img/haiyan-airlift.jpg", "Evacuees aboard a cargo plane")]))
case("case-02", d(2021, 8, 25), "train", "out_of_context",
     gold("Yes", "U.S. Air Force", [d(2013, 11, 17)], ["Philippines"],
          "To document evacuations after Typhoon Haiyan."),
     claimed(d(2021, 8), "Kabul, Afghanistan", "A Twitter user", "To show an Indian evacuation flight"),
     ["reverse_image_search", "keyword_search"], "typhoon airlift",
     [("https://airmobility.example.mil/news/haiyan-airlift", "full", ["https://airmobility.example.mil/img/haiyan-airlift.jpg"]),
      ("https://pesacheck.org/photo-kabul-plane", "full", []),
      ("https://history.example.com/typhoon-2013-gallery", "partial", [])],
     {"text": {"source": "U.S. Air Force", "date": "November 17, 2013", "location": "Tacloban, Philippines",
               "motivation": "To document evacuations after Typhoon Haiyan."}})

# case-03: manipulated landmark photo (original in oracle fixtures).
add_page("https://memes.example.com/eiffel-wave", page_html(
    "Giant wave hits Paris", "MemeHub", None, "2022-01-10", None,
    ["A doctored snowfall landmark image spreading online."]))
add_page("https://wire.example.com/2018/02/paris-snow", page_html(
    "Snow blankets Paris", "World Wire", "Claire Dubois", "2018-02-07",
    "Heavy snow fell on the French capital.",
    ["Snow covered the Champ de Mars on February 7, 2018, in a snowfall landmark photo by AFP photographer Claire "
     "Dubois.", "Traffic was disrupted across Paris."],
    [("/photos/paris-snow.jpg", "The Eiffel Tower under snow, Paris, February 7, 2018. AFP")]))
add_page("https://travel.example.org/paris-winter", page_html(
    "Paris in winter", "Travel Notes", None, "2019-01-05", None,
    ["That snowfall landmark picture from 2018 remains the classic winter view of Paris."]))
ris["case-03-original.png"] = {"results": [
    {"page_url": "https://wire.example.com/2018/02/paris-snow", "match_kind": "full",
     "matched_image_urls": ["https://wire.example.com/photos/paris-snow.jpg"]},
    {"page_url": "https://travel.example.org/paris-winter", "match_kind": "partial", "matched_image_urls": []}]}
case("case-03", d(2022, 1, 20), "train", "manipulated",
     gold("Yes", "AFP", [d(2018, 2, 7)], ["Paris"], "To report on snowfall in Paris."),
     claimed(d(2022, 1), "Paris, France", "An Instagram account", "To show a tsunami in Paris"),
     ["reverse_image_search"], "snowfall landmark",
     [("https://memes.example.com/eiffel-wave", "full", [])],
     {"text": {"source": "AFP", "date": "February 7, 2018", "location": "Paris, France",
               "motivation": "To report on snowfall in Paris."}},
     original="images/case-03-original.png")
labels["case-03.png"] = {"label": "manipulated", "score": 0.93}

# case-04: synthetic artwork.
add_page("https://portfolio.example.net/mira/flooded-city", page_html(
    "Flooded City, a digital series", "Mira Solberg Studio", "Mira Solberg", "2022-03-28",
    "New renders from the series.", ["These renders are entirely computer generated, a render series about climate."]))
case("case-04", d(2022, 4, 11), "train", "fake",
     gold("Yes", "Mira Solberg", [d(2022, 3)], [], "Digital art about climate change."),
     claimed(None, "Mumbai, India", "A WhatsApp forward", None),
     ["reverse_image_search"], "render series",
     [("https://portfolio.example.net/mira/flooded-city", "full", [])],
     {"text": {"source": "Mira Solberg", "date": "March 2022", "location": "Not enough information",
               "motivation": "Digital art about climate change."}})

# case-05: protest photo from 2014.
add_page("https://apnews.example.com/kyiv-protest-2014", page_html(
    "Clashes in central Kyiv", "Associated Wire", "Petro Koval", "2014-02-20",
    "Protesters and police clashed on Independence Square.",
    ["Smoke rose over Independence Square on Feb. 20, 2014, as the square barricades burned.",
     "The photograph was distributed by the Associated Press."],
    [("/pics/kyiv-smoke.jpg", "Smoke over Independence Square, Kyiv, February 20, 2014.")]))
add_page("https://blog.example.com/2015/maidan-anniversary", page_html(
    "One year after Maidan", "Eastern Notes", None, "2015-02-20", None,
    ["The square barricades photo became a symbol of the protests in Kyiv, Ukraine."]))
add_page("https://reshare.example.net/kyiv-2022", page_html(
    "Kyiv today", "Reshare", None, "2022-06-20", None, ["Square barricades everywhere in Kyiv."]))
case("case-05", d(2022, 6, 15), "val", "out_of_context",
     gold("Yes", "Associated Press", [d(2014, 2, 20)], ["Kyiv"], "To report on the Maidan protests."),
     claimed(d(2022, 3), "Kyiv, Ukraine", "A Telegram channel", "To show shelling in Kyiv"),
     ["reverse_image_search"], "square barricades",
     [("https://apnews.example.com/kyiv-protest-2014", "full", ["https://apnews.example.com/pics/kyiv-smoke.jpg"]),
      ("https://blog.example.com/2015/maidan-anniversary", "partial", []),
      ("https://reshare.example.net/kyiv-2022", "full", [])],
     {"text": {"source": "Associated Press", "date": "February 20, 2014", "location": "Kyiv, Ukraine",
               "motivation": "To report on protests in Kyiv."}})

# case-06: genuine heatwave photo.
add_page("https://gettyish.example.com/london-heat-2022", page_html(
    "London swelters in record heat", "Image Bank", "Oliver Grant", "2022-07-19",
    "Temperatures passed 40C for the first time.",
    ["Sunbathers crowded a park in London on July 19, 2022, during the record heat dome.",
     "Photo by Oliver Grant for Getty Images."],
    [("/c/london-heat.jpg", "Sunbathers in London, July 19, 2022.")]))
add_page("https://cityweather.example.org/heat-dome", page_html(
    "What caused the heat dome", "City Weather", None, "2022-07-22", None,
    ["The heat dome brought 40C readings across England."]))
case("case-06", d(2022, 7, 30), "val", "true",
     gold("Yes", "Getty Images", [d(2022, 7, 19)], ["London"], "To report on the heatwave in London."),
     claimed(d(2022, 7, 19), "London, UK", "A news site", "To report on the heatwave"),
     ["reverse_image_search"], "heat dome",
     [("https://gettyish.example.com/london-heat-2022", "full", ["https://gettyish.example.com/c/london-heat.jpg"]),
      ("https://cityweather.example.org/heat-dome", "partial", [])],
     {"text": {"source": "Oliver Grant, Getty Images", "date": "July 19, 2022", "location": "London",
               "motivation": "To report on the heatwave in London."}})

# case-07: strike photo from 2019.
add_page("https://progres.example.fr/lyon-greve-2019", page_html(
    "Thousands march in Lyon against pension reform", "Rhone Progress", "Anne Morel", "2019-12-05",
    "A national strike day.",
    ["Marchers filled the Place Bellecour on December 5, 2019, during the pension strike march.",
     "The picture was taken by Anne Morel."],
    [("/i/lyon-march.jpg", "Pension strike march in Lyon, December 5, 2019.")]))
case("case-07", d(2022, 9, 5), "val", "out_of_context",
     gold("Yes", "Anne Morel", [d(2019, 12, 5)], ["Lyon"], "To report on the pension reform strike."),
     claimed(d(2022, 9), "Lyon, France", "A Facebook group", "To show a 2022 fuel protest"),
     ["reverse_image_search"], "pension strike march",
     [("https://progres.example.fr/lyon-greve-2019", "full", ["https://progres.example.fr/i/lyon-march.jpg"])],
     {"text": {"source": "Anne Morel", "date": "December 2019", "location": "Lyon",
               "motivation": "To report on the pension reform strike."}})

# case-08: protest photo, the text-only golden case.
ld = ('\n<script type="application/ld+json">{"@context":"https://schema.org","@type":"NewsArticle",'
      '"headline":"Protest fills Place de la Republique","datePublished":"2016-03-31",'
      '"author":{"@type":"Person","name":"Luc Martin"}}</script>')
add_page("https://journal.example.fr/2016/03/31/protest", page_html(
    "Protest fills Place de la Republique", "Le Journal", None, "2016-03-31",
    "Thousands marched against the labour reform.",
    ["Thousands of people joined a labour reform march in Paris on Thursday, filling the Place de la Republique.",
     "Photographer Luc Martin took the image from a rooftop overlooking the square."],
    [("/img/republique.jpg", "The Place de la Republique during the labour reform march, March 31, 2016.")],
    date_style="none", extra_head=ld))
add_page("https://photos.example.com/paris-protest-2016", page_html(
    "Best protest photos of the week", "Photo Weekly", "Editors", "2016-04-02", None,
    ["Our pick this week: the labour reform march seen from above by Luc Martin."],
    [("https://journal.example.fr/img/republique.jpg", "Paris, March 31")]))
add_page("https://factly.in/fake-news/berlin-protest-photo/", page_html(
    "Old Paris photo shared as Berlin climate protest", "FACTLY", "Factly Team", "2022-11-02", None,
    ["The labour reform march photo is from Paris, 2016."]))
add_page("https://socialmirror.example.com/berlin-protest", page_html(
    "Berlin climate protest draws record crowd", "Social Mirror", None, "2022-11-20", None,
    ["Huge labour reform march style crowd in Berlin."]))
case("case-08", d(2022, 11, 2), "test", "out_of_context",
     gold("Yes", "Luc Martin", [d(2016, 3, 31)], ["Paris", "France"], "To report on protests against the labour reform."),
     claimed(d(2022, 10), "Berlin, Germany", "A Twitter user", "To show a climate protest in Berlin"),
     ["reverse_image_search"], "labour reform march",
     [("https://journal.example.fr/2016/03/31/protest", "full", ["https://journal.example.fr/img/republique.jpg"]),
      ("https://photos.example.com/paris-protest-2016", "partial", []),
      ("https://factly.in/fake-news/berlin-protest-photo/", "full", []),
      ("https://socialmirror.example.com/berlin-protest", "full", [])],
     {"text": {"source": "Luc Martin, Le Journal", "date": "March 31, 2016", "location": "Paris, France",
               "motivation": "To report on a labour reform march in Paris."},
      "image": {"location": "Berlin, Germany", "date": "October 2022"}})

# case-09: manipulated earthquake photo.
add_page("https://viral.example.net/quake-collapse", page_html(
    "Shocking quake image", "Viral Daily", None, "2023-02-08", None, ["A doctored bosphorus flood image circulating."]))
add_page("https://bosphorus.example.com/2017/07/istanbul-flood", page_html(
    "Flash floods hit Istanbul", "Bosphorus News Agency", "Emre Yilmaz", "2017-07-18",
    "Streets turned into rivers.",
    ["A sudden storm flooded streets in Istanbul on July 18, 2017, in this bosphorus flood photo by Emre Yilmaz.",
     "Bosphorus News Agency distributed the image."],
    [("/p/istanbul-flood.jpg", "A flooded street in Istanbul, July 18, 2017.")]))
ris["istanbul-flood.jpg"] = ris["case-09-original.png"] = {"results": [
    {"page_url": "https://bosphorus.example.com/2017/07/istanbul-flood", "match_kind": "full",
     "matched_image_urls": ["https://bosphorus.example.com/p/istanbul-flood.jpg"]}]}
case("case-09", d(2023, 2, 14), "test", "manipulated",
     gold("Yes", "Bosphorus News Agency", [d(2017, 7, 18)], ["Istanbul"], "To report on flash floods in Istanbul."),
     claimed(d(2023, 2, 6), "Turkey", "A YouTube channel", "To show earthquake damage"),
     ["reverse_image_search"], "bosphorus flood",
     [("https://viral.example.net/quake-collapse", "full", []),
      ("https://bosphorus.example.com/2017/07/istanbul-flood", "partial", [])],
     {"text": {"source": "Emre Yilmaz, Bosphorus News Agency", "date": "July 18, 2017", "location": "Istanbul, Turkey",
               "motivation": "To report on flash floods in Istanbul."},
      "image": {"location": "Turkey"}},
     original="images/case-09-original.png")
labels["case-09.png"] = {"label": "manipulated", "score": 0.87}

# case-10: monsoon photo from 2005.
add_page("https://westerndaily.example.in/2005/07/mumbai-deluge", page_html(
    "Mumbai brought to a halt by deluge", "Western Daily", "Raj Patel", "2005-07-27",
    "Record rainfall paralysed the city.",
    ["Commuters walked through waist-deep water on July 26, 2005, as the monsoon deluge hit Mumbai, India.",
     "Photo: Raj Patel, Western Daily."],
    [("/ph/mumbai-deluge.jpg", "Commuters in waist-deep water, Mumbai, July 26, 2005.")]))
add_page("https://monsoon.example.org/archive", page_html(
    "Monsoon archive", "Monsoon Archive", None, None, None,
    ["An undated collection including the monsoon deluge photos."]))
add_page("https://forum.example.com/thread/123", "<html><body>login required</body></html>", status=403)
case("case-10", d(2023, 5, 20), "test", "out_of_context",
     gold("Yes", "Raj Patel, Western Daily", [d(2005, 7, 26)], ["Mumbai", "India"], "To report on the Mumbai floods."),
     claimed(d(2023, 5), "Chennai, India", "A Facebook user", "To show flooding in 2023"),
     ["reverse_image_search", "keyword_search"], "monsoon deluge",
     [("https://westerndaily.example.in/2005/07/mumbai-deluge", "full",
       ["https://westerndaily.example.in/ph/mumbai-deluge.jpg"]),
      ("https://monsoon.example.org/archive", "partial", []),
      ("https://forum.example.com/thread/123", "full", [])],
     {"text": {"source": "Raj Patel", "date": "July 26, 2005", "location": "Mumbai, India", "motivation": "REFUSED"}})

# case-11: AI-generated image with no prior uses.
case("case-11", d(2023, 8, 9), "test", "fake",
     gold("No", None, [], [], "To spread a satirical message."),
     claimed(d(2023, 8), "Miami, Florida", "An X account", "To show a shark in a flooded street"),
     [], "no prior use at all", [], {})

# case-12: bushfire photo reused; the detector wrongly flags it.
add_page("https://harbourherald.example.com/2019/12/sydney-smoke", page_html(
    "Smoke haze engulfs Sydney on New Year's Eve", "Harbour Herald", "Grace Lin", "2019-12-31",
    "Bushfire smoke covered the harbour.",
    ["Bushfire smoke turned the sky orange over Sydney, Australia on December 31, 2019, in this harbour haze photo.",
     "Photo by Grace Lin, Harbour Herald."],
    [("/m/sydney-smoke.jpg", "Smoke over Sydney Harbour, December 31, 2019.")]))
add_page("https://climate.example.org/2020/01/fire-season", page_html(
    "A fire season in pictures", "Climate Desk", None, "2020-01-10", None,
    ["This harbour haze image defined a whole fire season across New South Wales."],
    [("https://harbourherald.example.com/m/sydney-smoke.jpg", "Sydney in smoke")]))
add_page("https://wildfires.example.ca/2023/smoke", page_html(
    "Canada wildfire smoke", "Wildfire Watch", None, "2023-06-08", None, ["harbour haze over Toronto"]))
ris["sydney-smoke.jpg"] = {"results": [
    {"page_url": "https://harbourherald.example.com/2019/12/sydney-smoke", "match_kind": "full",
     "matched_image_urls": ["https://harbourherald.example.com/m/sydney-smoke.jpg"]}]}
case("case-12", d(2023, 11, 30), "test", "out_of_context",
     gold("Yes", "Grace Lin, Harbour Herald", [d(2019, 12, 31)], ["Sydney", "Australia"],
          "To report on the bushfire smoke in Sydney."),
     claimed(d(2023, 6), "Toronto, Canada", "A Reddit post", "To show wildfire smoke in Canada"),
     ["reverse_image_search"], "harbour haze",
     [("https://harbourherald.example.com/2019/12/sydney-smoke", "full",
       ["https://harbourherald.example.com/m/sydney-smoke.jpg"]),
      ("https://climate.example.org/2020/01/fire-season", "partial", []),
      ("https://wildfires.example.ca/2023/smoke", "full", [])],
     {"text": {"source": "Grace Lin", "date": "December 31, 2019", "location": "Sydney, Australia",
               "motivation": "To report on the bushfire smoke."}})
labels["case-12.png"] = {"label": "manipulated", "score": 0.71}

# --------------------------------------------------------------------------
# Fact-checking articles for the corpus builder.

archive = {
    "factly.in": [
        {"url": "https://factly.in/fake-news/old-photo-of-train-accident/", "timestamp": "20210405120000"},
        {"url": "https://factly.in/fake-news/video-of-flood-in-assam/", "timestamp": "20210712120000"},
        {"url": "https://factly.in/fake-news/edited-image-of-parliament/", "timestamp": "20220115120000"},
        {"url": "https://factly.in/fake-news/claim-about-vaccine/", "timestamp": "20220301120000"},
        {"url": "https://factly.in/fake-news/picture-of-bridge-collapse-is-old/", "timestamp": "20220610120000"},
        {"url": "https://factly.in/fake-news/budget-numbers-explained/", "timestamp": "20220701120000"},
        {"url": "https://factly.in/fake-news/photo-de-manifestation-a-paris/", "timestamp": "20221004120000"},
        {"url": "https://factly.in/fake-news/speech-misquoted/", "timestamp": "20230112120000"},
        {"url": "https://factly.in/fake-news/election-rumour/", "timestamp": "20230220120000"},
        {"url": "https://factly.in/fake-news/old-quote-resurfaces/", "timestamp": "20180320120000"},
    ],
    "pesacheck.org": [
        {"url": "https://pesacheck.org/edited-image-of-parliament-shared-again", "timestamp": "20220120120000"},
        {"url": "https://pesacheck.org/fuel-price-claims", "timestamp": "20220901120000"},
    ],
    "211check.org": [
        {"url": "https://211check.org/photo-of-cattle-raid-is-from-2017/", "timestamp": "20230405120000"},
        {"url": "https://211check.org/photo-of-cattle-raid-is-from-2017/", "timestamp": "20230406120000"},
        "https://211check.org/about-us/",
    ],
}


def fc_article(url, title, date, paragraphs, image, lang="en"):
    add_page(url, page_html(title, "FC Desk", "Fact Check Desk", date, None, paragraphs,
                            [image] if image else [], lang=lang))


fc_articles = [
    ("https://factly.in/fake-news/old-photo-of-train-accident/", "Old photo of a train accident shared as recent",
     "2021-04-05", ["A photo of a derailed train is being shared as a recent accident.",
                    "A reverse image search using Google led us to a news report from 2015 in Odisha, India.",
                    "The image was taken by a local photographer, Arun Das, for the Eastern Chronicle on June 3, 2015."],
     ("https://factly.in/wp-content/uploads/train-accident.jpg", "The viral image"),
     {"provenance": "Yes", "source": "Arun Das, Eastern Chronicle", "date": ["June 3, 2015"], "location": ["Odisha, India"],
      "motivation": "To report on a train derailment", "claimed_date": "April 2021", "claimed_location": "Bihar",
      "claimant": "Facebook users", "claimant_motivation": "Not enough information", "image_type": "out_of_context"}),
    ("https://factly.in/fake-news/edited-image-of-parliament/", "Edited image of parliament shared with false claim",
     "2022-01-15", ["An image showing a flag on the parliament building has been digitally altered.",
                    "Using Yandex image search we found the original image published in 2019.",
                    "Geolocation confirmed the building is in New Delhi."],
     ("https://factly.in/wp-content/uploads/parliament.jpg", "Edited image"),
     {"provenance": "Yes", "source": "Not enough information", "date": ["2019"], "location": ["New Delhi, India"],
      "motivation": "Not enough information", "claimed_date": "Not enough information",
      "claimed_location": "New Delhi", "claimant": "Twitter users", "claimant_motivation": "Not enough information",
      "image_type": "manipulated"}),
    ("https://factly.in/fake-news/picture-of-bridge-collapse-is-old/", "Picture of bridge collapse is old",
     "2022-06-10", ["A picture of a collapsed bridge is viral.",
                    "A keyword search led us to reports of a collapse in Mumbai between 2017 and 2018."],
     ("https://factly.in/wp-content/uploads/bridge.jpg", "Bridge"),
     {"provenance": "Yes", "source": ["Press Trust", "Local reporters"], "date": ["2017", "2018"], "location": ["Mumbai"],
      "motivation": "To report on the collapse", "claimed_date": "June 2022", "claimed_location": "Pune",
      "claimant": "WhatsApp users", "claimant_motivation": "Not enough information", "image_type": "out_of_context"}),
    ("https://factly.in/fake-news/photo-de-manifestation-a-paris/", "Une photo de manifestation a Paris",
     "2022-10-04", ["Une photo de la manifestation est partagee avec une fausse affirmation.",
                    "La photo a ete prise a Paris en 2016 lors d'une manifestation contre la reforme du travail et "
                    "elle circule depuis sur les reseaux sociaux avec des legendes trompeuses."],
     ("https://factly.in/wp-content/uploads/manif.jpg", "La photo"), None),
    ("https://pesacheck.org/edited-image-of-parliament-shared-again", "Edited image of parliament shared with false claim",
     "2022-01-20", ["The same edited image of parliament is shared in Kenya.",
                    "A reverse image search shows the original image."],
     ("https://factly.in/wp-content/uploads/parliament.jpg", "Edited image"), None),
    ("https://211check.org/photo-of-cattle-raid-is-from-2017/", "Photo of cattle raid is from 2017",
     "2023-04-05", ["A photo claiming to show a recent cattle raid is circulating.",
                    "A Google reverse image search and Bing visual search show the photo was published in "
                    "September 2017 in Juba, South Sudan, by Deng Garang for Nile Today."],
     ("https://211check.org/uploads/cattle.jpg", "Cattle"),
     {"provenance": "Yes", "source": "Deng Garang, Nile Today", "date": ["September 2017"], "location": ["Juba"],
      "motivation": "To report on cattle raids", "claimed_date": "April 2023", "claimed_location": "Jonglei",
      "claimant": "Facebook users", "claimant_motivation": "To incite violence", "image_type": "out_of_context"}),
]

for url, title, date, paras, image, annotation in fc_articles:
    fc_article(url, title, date, paras, image, lang="fr" if "manifestation" in url else "en")

# The bridge article's first annotation reply is not JSON; the repair prompt works.
builder_rules = []
for url, title, date, paras, image, annotation in fc_articles:
    if annotation is None:
        continue
    body = json.dumps(annotation, indent=1)
    if "bridge" in url:
        builder_rules.append({"contains": [REPAIR_MARKER, title], "text": "```json\n" + body + "\n```"})
        builder_rules.append({"contains": [ANNOTATION_MARKER, title], "text": "Sure! The bridge collapsed in Mumbai."})
    else:
        builder_rules.append({"contains": [ANNOTATION_MARKER, title], "text": body})

# --------------------------------------------------------------------------
# Embeddings: image vectors and evidence text vectors, dimension 8.

rng = random.Random(20240611)
DIM = 8


def unit(v):
    n = math.sqrt(sum(x * x for x in v))
    return [round(x / n, 6) for x in v]


def rand_unit():
    return unit([rng.gauss(0, 1) for _ in range(DIM)])


def mix(base, weight):
    noise = rand_unit()
    return unit([weight * b + (1 - weight) * n for b, n in zip(base, noise)])


image_vecs = {}
for c in cases:
    image_vecs[c["id"] + ".png"] = rand_unit()
image_vecs["case-03-original.png"] = mix(image_vecs["case-03.png"], 0.5)
image_vecs["case-09-original.png"] = mix(image_vecs["case-09.png"], 0.5)
# case-08's nearest train neighbours are case-01 then case-03.
image_vecs["case-01.png"] = mix(image_vecs["case-08.png"], 0.8)
image_vecs["case-03.png"] = mix(image_vecs["case-08.png"], 0.6)

text_rules = []
# Pages most similar to the image first, where that differs from RIS order.
SIMILARITY_ORDER = {
    "case-09.png": ["https://bosphorus.example.com/2017/07/istanbul-flood", "https://viral.example.net/quake-collapse"],
    "case-12.png": ["https://harbourherald.example.com/2019/12/sydney-smoke", "https://wildfires.example.ca/2023/smoke",
                    "https://climate.example.org/2020/01/fire-season"],
}
# Originals found on the web share the vector of the gold original.
url_image_vecs = {"istanbul-flood.jpg": image_vecs["case-09-original.png"],
                  "sydney-smoke.jpg": mix(image_vecs["case-12.png"], 0.9)}
# Text rules match first-wins, so the corpus images claim shared pages first.
for key, entry in sorted(ris.items(), key=lambda kv: kv[0] not in image_vecs or "-original" in kv[0]):
    base = image_vecs.get(key) or url_image_vecs[key]
    results = entry["results"]
    # Retrieval order is deliberately not the relevance order: the original
    # source article is most similar to the image, reposts less so.
    order = SIMILARITY_ORDER.get(key, [r["page_url"] for r in results])
    for r in results:
        url = r["page_url"]
        rank = order.index(url)
        weight = 0.95 if rank == 0 else 0.7 - 0.3 * (rank - 1)
        title = None
        html = (WEB / pages[url]["file"]).read_text()
        if 'og:title" content="' in html:
            title = html.split('og:title" content="', 1)[1].split('"', 1)[0]
        if title:
            text_rules.append({"contains": [title], "vector": mix(base, max(weight, 0.05))})

# --------------------------------------------------------------------------
# Write everything.


def write_json(path, obj):
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(obj, indent=2, ensure_ascii=False) + "\n", encoding="utf-8")


def make_image(path, seed):
    r = random.Random(seed)
    img = Image.new("RGB", (32, 32), tuple(r.randrange(256) for _ in range(3)))
    draw = ImageDraw.Draw(img)
    for _ in range(6):
        x0, y0 = r.randrange(28), r.randrange(28)
        draw.rectangle([x0, y0, x0 + r.randrange(2, 12), y0 + r.randrange(2, 12)],
                       fill=tuple(r.randrange(256) for _ in range(3)))
    img.save(path, format="PNG", optimize=False)


IMAGES.mkdir(parents=True, exist_ok=True)
for name in image_vecs:
    make_image(IMAGES / name, name)

with open(ROOT / "corpus.jsonl", "w", encoding="utf-8") as f:
    for c in cases:
        f.write(json.dumps(c, ensure_ascii=False, separators=(",", ":")) + "\n")

write_json(WEB / "index.json", dict(sorted(pages.items())))
write_json(MOCK / "ris.json", ris)
write_json(MOCK / "labels.json", labels)
write_json(MOCK / "archive.json", archive)
write_json(MOCK / "embeddings.json", {"dim": DIM, "images": {**image_vecs, **url_image_vecs},
                                      "text_rules": text_rules})
write_json(MOCK / "chat.json", {"default": "Not enough information",
                                "by_hash": {},
                                "rules": builder_rules + chat_rules + image_rules})
print(f"{len(cases)} cases, {len(pages)} pages, {len(image_vecs)} images")

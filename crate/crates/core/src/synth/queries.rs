//! Example queries shipped with the generated collections, as
//! `(file name, layer, text)`. Layers: `news`, `tweets`, `warc`, or
//! `news+tweets` for queries spanning two layers.

pub const BROOKLYN_LAWYERS: &str = r#"SELECT ?article ?title ?date ?nylawyer ?bdate ?abstr WHERE {
 SERVICE <http://dbpedia.org/sparql> {
  ?nylawyer dc:subject dbc:New_York_lawyers ;
              dbo:birthPlace dbr:Brooklyn .
  OPTIONAL {
   ?nylawyer dbo:birthDate ?bdate ;
                dbo:abstract ?abstr FILTER(lang(?abstr)="fr")}}
 ?article dc:date ?date FILTER(?date>="1989-06-01"^^xsd:date
                                  && ?date<="1989-06-30"^^xsd:date)
 ?article schema:mentions ?entity .
 ?entity oae:hasMatchedURI  ?nylawyer .
 ?article dc:title ?title
} ORDER BY ?nylawyer
"#;

pub const POPULAR_LAKERS_TWEETS: &str = r#"SELECT DISTINCT ?tweet ?count ?date ?entityUri WHERE {
 SERVICE <http://dbpedia.org/sparql> {
   ?entityUri dc:subject dbc:Los_Angeles_Lakers_players }
 ?t a tw:Tweet ;
     dc:date ?date FILTER(?date>="2016-06-01"^^xsd:dateTime &&
                               ?date<="2016-08-31"^^xsd:dateTime)
 ?t tw:retweetCount ?count FILTER (?count > 50) .
 ?t schema:text ?tweet ; schema:mentions ?entity .
 ?entity oae:hasMatchedURI ?entityUri }
"#;

pub const LAKERS_ARTICLES_AND_TWEETS: &str = r#"SELECT DISTINCT ?player ?tweet WHERE {
 SERVICE <http://dbpedia.org/sparql> {
   ?player dc:subject dbc:Los_Angeles_Lakers_players }
 ?article dc:date ?date FILTER(?date>="2016-06-01"^^xsd:date
                                  && ?date<="2016-08-31"^^xsd:date)
 ?article schema:mentions ?articleEntity .
 ?articleEntity oae:hasMatchedURI ?player .
 ?tweet a tw:Tweet ;
        dc:date ?date FILTER(?date>="2016-06-01"^^xsd:date
                              && ?date<="2016-08-31"^^xsd:date) .
 ?tweet schema:mentions ?tweetEntity .
 ?tweetEntity oae:hasMatchedURI ?player }
"#;

pub const OCCUPY_JOURNALISTS: &str = r#"SELECT ?journ (COUNT(DISTINCT ?page) AS ?num) WHERE {
 SERVICE <http://dbpedia.org/sparql> {
   ?journ a yago:Journalist110224578 }
 ?page a owa:ArchivedDocument ;
           dc:hasVersion ?version .
 ?version schema:mentions ?entity .
 ?entity oae:hasMatchedURI  ?journ .
} GROUP BY ?journ ORDER BY DESC(?num)
"#;

pub const MANDELA_PER_YEAR: &str = r#"SELECT ?year (COUNT(DISTINCT ?article) AS ?num) WHERE {
  ?article dc:date ?date ;
             schema:mentions ?entity .
  ?entity oae:hasMatchedURI dbr:Nelson_Mandela
} GROUP BY (year(?date) AS ?year) order by ?year
"#;

pub const DRUGS_1987: &str = r#"SELECT ?drug (count(DISTINCT ?article) as ?numOfArticles) WHERE {
  SERVICE <http://dbpedia.org/sparql> {
    ?drug a dbo:Drug }
  ?article dc:date ?date FILTER(year(?date) = "1987") .
  ?article schema:mentions ?ent .
  ?ent oae:hasMatchedURI  ?drug .
} GROUP BY ?drug ORDER BY DESC(?numOfArticles)
"#;

pub const OBAMA_POLITICIANS_2007: &str = r#"SELECT ?politician (count(distinct ?article) as ?num) WHERE {
  SERVICE <http://dbpedia.org/sparql> {
     ?politician a dbo:Politician }
  ?article dc:date ?date FILTER(?date >= "2007-06-01"^^xsd:date &&
                                       ?date <= "2007-08-30"^^xsd:date)  .
  ?article schema:mentions ?entity .
  ?entity oae:hasMatchedURI dbr:Barack_Obama .
  ?article schema:mentions ?entityPolit.
  ?entityPolit oae:hasMatchedURI ?politician
                           FILTER (?politician != dbr:Barack_Obama)
} GROUP BY ?politician ORDER BY DESC(?num) LIMIT 5
"#;

pub const OBAMA_TWEET_SHARE_2016: &str = r#"SELECT ?month xsd:double(?cEnt)/xsd:double(?cAll)
WHERE {
 { SELECT (month(?date) AS ?month) (count(?tweet) AS ?cAll) WHERE {
     ?tweet dc:date ?date FILTER(year(?date) = 2016)
   } GROUP BY month(?date) }
 { SELECT (month(?date) AS ?month) (count(?tweet) AS ?cEnt) WHERE {
     ?tweet dc:date ?date FILTER(year(?date) = 2016) .
     ?tweet schema:mentions ?entity .
     ?entity oae:hasMatchedURI dbr:Barack_Obama
   } GROUP BY month(?date) }
} ORDER BY ?month
"#;

pub const SIMILAR_TO_GOLF_ARTICLE: &str = r#"SELECT ?article2 (count(?entUri2) as ?numOfCommon) WHERE {
 nyt:9504E4D71530F932A35755C0A9619C8B63 schema:mentions ?entity1 .
 ?entity1 oae:hasMatchedURI ?entUri1 .
 ?article2 schema:mentions ?entity2
      FILTER (?article2 != nyt:9504E4D71530F932A35755C0A9619C8B63)
 ?entity2 oae:hasMatchedURI ?entUri2 FILTER(?entUri2 = ?entUri1) .
} GROUP BY ?article2 ORDER BY DESC(?numOfCommon) LIMIT 5
"#;

pub const ALL: &[(&str, &str, &str)] = &[
    ("brooklyn_lawyers_june_1989.rq", "news", BROOKLYN_LAWYERS),
    (
        "popular_lakers_tweets_summer_2016.rq",
        "tweets",
        POPULAR_LAKERS_TWEETS,
    ),
    (
        "lakers_articles_and_tweets_summer_2016.rq",
        "news+tweets",
        LAKERS_ARTICLES_AND_TWEETS,
    ),
    ("occupy_journalists.rq", "warc", OCCUPY_JOURNALISTS),
    ("mandela_per_year.rq", "news", MANDELA_PER_YEAR),
    ("drugs_1987.rq", "news", DRUGS_1987),
    (
        "obama_politicians_summer_2007.rq",
        "news",
        OBAMA_POLITICIANS_2007,
    ),
    (
        "obama_tweet_share_2016.rq",
        "tweets",
        OBAMA_TWEET_SHARE_2016,
    ),
    (
        "similar_to_golf_article.rq",
        "news",
        SIMILAR_TO_GOLF_ARTICLE,
    ),
];

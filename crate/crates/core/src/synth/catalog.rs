//! Entities, sentence templates and information needs used by the generator.

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Group {
    Lawyer,
    Drug,
    Politician,
    Leader,
    Journalist,
    Golfer,
    Tennis,
    Laker,
    Basketball,
    Company,
    Place,
    Org,
    Thing,
}

pub(crate) struct Entity {
    pub id: &'static str,
    pub group: Group,
    pub surfaces: &'static [(&'static str, f64)],
    pub keywords: &'static [&'static str],
}

const fn ent(
    id: &'static str,
    group: Group,
    surfaces: &'static [(&'static str, f64)],
    keywords: &'static [&'static str],
) -> Entity {
    Entity {
        id,
        group,
        surfaces,
        keywords,
    }
}

use Group::*;

pub(crate) const ENTITIES: &[Entity] = &[
    ent(
        "Alan_Dershowitz",
        Lawyer,
        &[("Alan Dershowitz", 0.95), ("Dershowitz", 0.9)],
        &["lawyer", "court", "appeal", "harvard"],
    ),
    ent(
        "Ruth_Bader_Ginsburg",
        Lawyer,
        &[("Ruth Bader Ginsburg", 0.95), ("Ginsburg", 0.6)],
        &["lawyer", "court", "judge", "rights"],
    ),
    ent(
        "Bruce_Cutler",
        Lawyer,
        &[("Bruce Cutler", 0.95), ("Cutler", 0.5)],
        &["lawyer", "trial", "jury", "defense"],
    ),
    ent(
        "William_Kunstler",
        Lawyer,
        &[("William Kunstler", 0.95), ("Kunstler", 0.9)],
        &["lawyer", "rights", "trial"],
    ),
    ent(
        "Robert_Morgenthau",
        Lawyer,
        &[("Robert Morgenthau", 0.95), ("Morgenthau", 0.8)],
        &["prosecutor", "district", "attorney"],
    ),
    ent(
        "Louis_Nizer",
        Lawyer,
        &[("Louis Nizer", 0.95), ("Nizer", 0.9)],
        &["lawyer", "trial", "libel"],
    ),
    ent(
        "Cocaine",
        Drug,
        &[("cocaine", 0.9)],
        &["drug", "police", "smuggling"],
    ),
    ent(
        "Crack_cocaine",
        Drug,
        &[("crack cocaine", 0.95)],
        &["drug", "police", "addiction"],
    ),
    ent(
        "Heroin",
        Drug,
        &[("heroin", 0.9)],
        &["drug", "addiction", "overdose"],
    ),
    ent(
        "Zidovudine",
        Drug,
        &[("AZT", 0.85), ("zidovudine", 0.95)],
        &["aids", "hiv", "patients"],
    ),
    ent(
        "Fluoxetine",
        Drug,
        &[("Prozac", 0.9), ("fluoxetine", 0.95)],
        &["depression", "patients", "prescription"],
    ),
    ent(
        "Methadone",
        Drug,
        &[("methadone", 0.9)],
        &["addiction", "clinic", "treatment"],
    ),
    ent(
        "Aspirin",
        Drug,
        &[("aspirin", 0.9)],
        &["heart", "pain", "study"],
    ),
    ent(
        "Sildenafil",
        Drug,
        &[("Viagra", 0.9), ("sildenafil", 0.95)],
        &["prescription", "pill", "patients"],
    ),
    ent(
        "Oxycodone",
        Drug,
        &[("OxyContin", 0.9), ("oxycodone", 0.95)],
        &["painkiller", "addiction", "prescription"],
    ),
    ent(
        "Barack_Obama",
        Politician,
        &[("Barack Obama", 0.95), ("Obama", 0.9)],
        &["president", "senator", "illinois", "campaign"],
    ),
    ent(
        "Hillary_Clinton",
        Politician,
        &[("Hillary Clinton", 0.95), ("Clinton", 0.35)],
        &["senator", "campaign", "candidate", "primary"],
    ),
    ent(
        "Bill_Clinton",
        Politician,
        &[("Bill Clinton", 0.95), ("Clinton", 0.45)],
        &["president", "governor", "arkansas", "economy"],
    ),
    ent(
        "John_McCain",
        Politician,
        &[("John McCain", 0.95), ("McCain", 0.9)],
        &["senator", "arizona", "campaign"],
    ),
    ent(
        "John_Edwards",
        Politician,
        &[("John Edwards", 0.9)],
        &["senator", "campaign", "carolina"],
    ),
    ent(
        "Mitt_Romney",
        Politician,
        &[("Mitt Romney", 0.95), ("Romney", 0.9)],
        &["governor", "campaign", "massachusetts"],
    ),
    ent(
        "Joe_Biden",
        Politician,
        &[("Joe Biden", 0.95), ("Biden", 0.9)],
        &["senator", "delaware", "campaign"],
    ),
    ent(
        "Bill_Richardson",
        Politician,
        &[("Bill Richardson", 0.9)],
        &["governor", "mexico", "campaign"],
    ),
    ent(
        "George_H._W._Bush",
        Politician,
        &[("George Bush", 0.7), ("Bush", 0.4)],
        &["president", "administration", "campaign"],
    ),
    ent(
        "Ross_Perot",
        Politician,
        &[("Ross Perot", 0.95), ("Perot", 0.9)],
        &["campaign", "independent", "texas"],
    ),
    ent(
        "Al_Gore",
        Politician,
        &[("Al Gore", 0.95), ("Gore", 0.6)],
        &["senator", "tennessee", "campaign"],
    ),
    ent(
        "Michael_Bloomberg",
        Politician,
        &[("Michael Bloomberg", 0.95), ("Bloomberg", 0.5)],
        &["mayor", "city", "park"],
    ),
    ent(
        "Nelson_Mandela",
        Leader,
        &[("Nelson Mandela", 0.95), ("Mandela", 0.9)],
        &["apartheid", "africa", "prison"],
    ),
    ent(
        "Ralph_Nader",
        Journalist,
        &[("Ralph Nader", 0.95), ("Nader", 0.85)],
        &["consumer", "activist", "corporate"],
    ),
    ent(
        "Chris_Hedges",
        Journalist,
        &[("Chris Hedges", 0.95), ("Hedges", 0.15)],
        &["journalist", "war", "reporter", "column"],
    ),
    ent(
        "Dylan_Ratigan",
        Journalist,
        &[("Dylan Ratigan", 0.95), ("Ratigan", 0.9)],
        &["television", "banks", "show"],
    ),
    ent(
        "Amy_Goodman",
        Journalist,
        &[("Amy Goodman", 0.95)],
        &["democracy", "radio", "reporter"],
    ),
    ent(
        "Matt_Taibbi",
        Journalist,
        &[("Matt Taibbi", 0.95), ("Taibbi", 0.9)],
        &["magazine", "banks", "column"],
    ),
    ent(
        "Bob_Woodward",
        Journalist,
        &[("Bob Woodward", 0.95), ("Woodward", 0.6)],
        &["reporter", "book", "sources"],
    ),
    ent(
        "Christiane_Amanpour",
        Journalist,
        &[("Christiane Amanpour", 0.95), ("Amanpour", 0.9)],
        &["correspondent", "television", "war"],
    ),
    ent(
        "Thomas_Friedman",
        Journalist,
        &[("Thomas Friedman", 0.9), ("Friedman", 0.3)],
        &["column", "foreign", "columnist"],
    ),
    ent(
        "Ben_Crenshaw",
        Golfer,
        &[("Ben Crenshaw", 0.95), ("Crenshaw", 0.9)],
        &["golf", "masters", "putt"],
    ),
    ent(
        "Greg_Norman",
        Golfer,
        &[("Greg Norman", 0.95), ("Norman", 0.3)],
        &["golf", "shark", "australian"],
    ),
    ent(
        "Nick_Faldo",
        Golfer,
        &[("Nick Faldo", 0.95), ("Faldo", 0.9)],
        &["golf", "masters", "english"],
    ),
    ent(
        "Davis_Love_III",
        Golfer,
        &[("Davis Love", 0.9)],
        &["golf", "tour", "birdie"],
    ),
    ent(
        "Ernie_Els",
        Golfer,
        &[("Ernie Els", 0.95), ("Els", 0.7)],
        &["golf", "open", "african"],
    ),
    ent(
        "Tiger_Woods",
        Golfer,
        &[("Tiger Woods", 0.95), ("Woods", 0.5)],
        &["golf", "open", "major"],
    ),
    ent(
        "Phil_Mickelson",
        Golfer,
        &[("Phil Mickelson", 0.95), ("Mickelson", 0.9)],
        &["golf", "open", "lefthander"],
    ),
    ent(
        "Jack_Nicklaus",
        Golfer,
        &[("Jack Nicklaus", 0.95), ("Nicklaus", 0.9)],
        &["golf", "major", "bear"],
    ),
    ent(
        "Pete_Sampras",
        Tennis,
        &[("Pete Sampras", 0.95), ("Sampras", 0.9)],
        &["tennis", "serve", "wimbledon"],
    ),
    ent(
        "Andre_Agassi",
        Tennis,
        &[("Andre Agassi", 0.95), ("Agassi", 0.9)],
        &["tennis", "baseline", "open"],
    ),
    ent(
        "Steffi_Graf",
        Tennis,
        &[("Steffi Graf", 0.95), ("Graf", 0.8)],
        &["tennis", "forehand", "wimbledon"],
    ),
    ent(
        "Monica_Seles",
        Tennis,
        &[("Monica Seles", 0.95), ("Seles", 0.9)],
        &["tennis", "open", "final"],
    ),
    ent(
        "Jim_Courier",
        Tennis,
        &[("Jim Courier", 0.95), ("Courier", 0.4)],
        &["tennis", "open", "final"],
    ),
    ent(
        "Roger_Federer",
        Tennis,
        &[("Roger Federer", 0.95), ("Federer", 0.9)],
        &["tennis", "swiss", "wimbledon"],
    ),
    ent(
        "Lleyton_Hewitt",
        Tennis,
        &[("Lleyton Hewitt", 0.95), ("Hewitt", 0.8)],
        &["tennis", "australian", "final"],
    ),
    ent(
        "Venus_Williams",
        Tennis,
        &[("Venus Williams", 0.95)],
        &["tennis", "sister", "wimbledon"],
    ),
    ent(
        "Kobe_Bryant",
        Laker,
        &[("Kobe Bryant", 0.95), ("Kobe", 0.8)],
        &["lakers", "basketball", "points"],
    ),
    ent(
        "Derek_Fisher",
        Laker,
        &[("Derek Fisher", 0.95), ("Fisher", 0.4)],
        &["lakers", "guard", "basketball"],
    ),
    ent(
        "Robert_Horry",
        Laker,
        &[("Robert Horry", 0.95), ("Horry", 0.9)],
        &["lakers", "shot", "basketball"],
    ),
    ent(
        "Rick_Fox",
        Laker,
        &[("Rick Fox", 0.95)],
        &["lakers", "forward", "basketball"],
    ),
    ent(
        "Julius_Randle",
        Laker,
        &[("Julius Randle", 0.95), ("Randle", 0.9)],
        &["lakers", "forward", "basketball"],
    ),
    ent(
        "Jordan_Clarkson",
        Laker,
        &[("Jordan Clarkson", 0.95), ("Clarkson", 0.6)],
        &["lakers", "guard", "basketball"],
    ),
    ent(
        "Luol_Deng",
        Laker,
        &[("Luol Deng", 0.95), ("Deng", 0.7)],
        &["lakers", "forward", "basketball"],
    ),
    ent(
        "Timofey_Mozgov",
        Laker,
        &[("Timofey Mozgov", 0.95), ("Mozgov", 0.9)],
        &["lakers", "center", "basketball"],
    ),
    ent(
        "Lou_Williams",
        Laker,
        &[("Lou Williams", 0.95)],
        &["lakers", "guard", "bench"],
    ),
    ent(
        "Michael_Jordan",
        Basketball,
        &[("Michael Jordan", 0.95), ("Jordan", 0.45)],
        &["basketball", "bulls", "points", "finals", "game"],
    ),
    ent(
        "Scottie_Pippen",
        Basketball,
        &[("Scottie Pippen", 0.95), ("Pippen", 0.9)],
        &["basketball", "bulls", "finals"],
    ),
    ent(
        "Karl_Malone",
        Basketball,
        &[("Karl Malone", 0.95), ("Malone", 0.5)],
        &["basketball", "jazz", "finals"],
    ),
    ent(
        "John_Stockton",
        Basketball,
        &[("John Stockton", 0.95), ("Stockton", 0.5)],
        &["basketball", "jazz", "assists"],
    ),
    ent(
        "Dennis_Rodman",
        Basketball,
        &[("Dennis Rodman", 0.95), ("Rodman", 0.9)],
        &["basketball", "rebounds", "bulls"],
    ),
    ent(
        "IBM",
        Company,
        &[("IBM", 0.9)],
        &["computer", "shares", "company"],
    ),
    ent(
        "Apple_Inc.",
        Company,
        &[("Apple Computer", 0.95), ("Apple", 0.45)],
        &["computer", "macintosh", "shares", "software"],
    ),
    ent(
        "Microsoft",
        Company,
        &[("Microsoft", 0.95)],
        &["software", "windows", "shares"],
    ),
    ent(
        "Intel",
        Company,
        &[("Intel", 0.9)],
        &["chips", "shares", "processor"],
    ),
    ent(
        "Enron",
        Company,
        &[("Enron", 0.95)],
        &["energy", "shares", "houston"],
    ),
    ent(
        "General_Motors",
        Company,
        &[("General Motors", 0.95)],
        &["cars", "detroit", "shares"],
    ),
    ent(
        "Chrysler",
        Company,
        &[("Chrysler", 0.9)],
        &["cars", "detroit", "shares"],
    ),
    ent(
        "ExxonMobil",
        Company,
        &[("Exxon", 0.9)],
        &["oil", "shares", "energy"],
    ),
    ent(
        "The_Coca-Cola_Company",
        Company,
        &[("Coca-Cola", 0.9)],
        &["soda", "atlanta", "shares"],
    ),
    ent(
        "Goldman_Sachs",
        Org,
        &[("Goldman Sachs", 0.95)],
        &["bank", "wall", "bonuses"],
    ),
    ent(
        "New_York_City",
        Place,
        &[("New York City", 0.95), ("New York", 0.8)],
        &["city", "mayor"],
    ),
    ent(
        "Brooklyn",
        Place,
        &[("Brooklyn", 0.9)],
        &["borough", "bridge"],
    ),
    ent(
        "Manhattan",
        Place,
        &[("Manhattan", 0.9)],
        &["borough", "island"],
    ),
    ent(
        "Washington,_D.C.",
        Place,
        &[("Washington", 0.55)],
        &["capital", "congress", "administration", "city"],
    ),
    ent(
        "Los_Angeles",
        Place,
        &[("Los Angeles", 0.9)],
        &["california", "city"],
    ),
    ent("Chicago", Place, &[("Chicago", 0.9)], &["illinois", "city"]),
    ent(
        "Boston",
        Place,
        &[("Boston", 0.9)],
        &["massachusetts", "city"],
    ),
    ent("London", Place, &[("London", 0.9)], &["britain", "city"]),
    ent("Moscow", Place, &[("Moscow", 0.9)], &["russia", "kremlin"]),
    ent("Paris", Place, &[("Paris", 0.9)], &["france", "city"]),
    ent(
        "South_Africa",
        Place,
        &[("South Africa", 0.95)],
        &["africa", "apartheid"],
    ),
    ent(
        "Soweto",
        Place,
        &[("Soweto", 0.95)],
        &["township", "africa"],
    ),
    ent(
        "Jordan",
        Place,
        &[("Jordan", 0.4)],
        &["amman", "king", "hussein", "border", "israel"],
    ),
    ent(
        "Saint_Petersburg",
        Place,
        &[("Saint Petersburg", 0.95), ("Leningrad", 0.9)],
        &["russia", "city", "neva"],
    ),
    ent(
        "Augusta,_Georgia",
        Place,
        &[("Augusta", 0.8)],
        &["golf", "georgia", "masters"],
    ),
    ent(
        "Wall_Street",
        Place,
        &[("Wall Street", 0.9)],
        &["stocks", "banks", "traders"],
    ),
    ent(
        "Zuccotti_Park",
        Place,
        &[("Zuccotti Park", 0.95)],
        &["protest", "park", "occupy"],
    ),
    ent(
        "Oakland,_California",
        Place,
        &[("Oakland", 0.85)],
        &["california", "port", "city"],
    ),
    ent(
        "United_Nations",
        Org,
        &[("United Nations", 0.95)],
        &["security", "council", "delegates"],
    ),
    ent(
        "United_States_Congress",
        Org,
        &[("Congress", 0.7)],
        &["senate", "house", "bill"],
    ),
    ent(
        "Federal_Reserve_System",
        Org,
        &[("Federal Reserve", 0.95)],
        &["rates", "inflation", "bank"],
    ),
    ent(
        "Harvard_University",
        Org,
        &[("Harvard", 0.8)],
        &["university", "students", "professor"],
    ),
    ent(
        "Los_Angeles_Lakers",
        Org,
        &[("Lakers", 0.9), ("Los Angeles Lakers", 0.95)],
        &["basketball", "nba"],
    ),
    ent(
        "New_York_City_Police_Department",
        Org,
        &[("NYPD", 0.9)],
        &["police", "officers", "arrests"],
    ),
    ent(
        "Apple",
        Thing,
        &[("apple", 0.25)],
        &["fruit", "orchard", "harvest", "pie"],
    ),
    ent(
        "George_Washington",
        Thing,
        &[("George Washington", 0.95), ("Washington", 0.3)],
        &["president", "general", "revolution", "army"],
    ),
];

/// Knowledge-base-only resources: typed but never mentioned.
pub(crate) const KB_ONLY: &[(&str, &str)] = &[
    ("Ibuprofen", "Drug"),
    ("Paracetamol", "Drug"),
    ("Dianne_Feinstein", "Politician"),
    ("Anderson_Cooper", "Journalist"),
];

/// `(id, birthplace, birth date, French abstract)` for the lawyers.
pub(crate) const LAWYERS: &[(&str, &str, Option<&str>, &str)] = &[
    (
        "Alan_Dershowitz",
        "Brooklyn",
        Some("1938-09-01"),
        "Alan Dershowitz est un avocat et professeur de droit américain.",
    ),
    (
        "Ruth_Bader_Ginsburg",
        "Brooklyn",
        Some("1933-03-15"),
        "Ruth Bader Ginsburg est une juriste américaine.",
    ),
    (
        "Bruce_Cutler",
        "Brooklyn",
        None,
        "Bruce Cutler est un avocat pénaliste new-yorkais.",
    ),
    (
        "William_Kunstler",
        "Manhattan",
        Some("1919-07-07"),
        "William Kunstler est un avocat américain des droits civiques.",
    ),
    (
        "Robert_Morgenthau",
        "Manhattan",
        Some("1919-07-31"),
        "Robert Morgenthau est un procureur américain.",
    ),
    (
        "Louis_Nizer",
        "London",
        Some("1902-02-06"),
        "Louis Nizer est un avocat américain né à Londres.",
    ),
];

/// Places, organisations and things that never satisfy an information need.
pub(crate) const NEWS_BACKGROUND: &[&str] = &[
    "New_York_City",
    "Brooklyn",
    "Manhattan",
    "Washington,_D.C.",
    "Los_Angeles",
    "Chicago",
    "Boston",
    "London",
    "Moscow",
    "Paris",
    "South_Africa",
    "Jordan",
    "Wall_Street",
    "United_Nations",
    "United_States_Congress",
    "Federal_Reserve_System",
    "Harvard_University",
    "Apple",
    "George_Washington",
];

pub(crate) fn entity(id: &str) -> &'static Entity {
    ENTITIES
        .iter()
        .find(|e| e.id == id)
        .unwrap_or_else(|| panic!("unknown entity {id}"))
}

pub(crate) fn kb_types(group: Group) -> &'static [&'static str] {
    match group {
        Lawyer => &["dbo:Person"],
        Drug => &["dbo:Drug"],
        Politician | Leader => &["dbo:Politician", "dbo:Person"],
        Journalist => &["yago:Journalist110224578", "dbo:Person"],
        Golfer => &["dbo:GolfPlayer", "dbo:Person"],
        Tennis => &["dbo:TennisPlayer", "dbo:Person"],
        Laker | Basketball => &["dbo:BasketballPlayer", "dbo:Person"],
        Company => &["dbo:Company", "dbo:Organisation"],
        Place => &["dbo:Place"],
        Org => &["dbo:Organisation"],
        Thing => &["owl:Thing"],
    }
}

pub(crate) fn sentences(group: Group) -> &'static [&'static str] {
    match group {
        Lawyer => &[
            "{}, the defense lawyer, told the jury that the evidence was thin.",
            "In court on Tuesday, {} asked the judge to dismiss the indictment.",
            "{} has represented several clients before the appeals court.",
            "Prosecutors said {} would file a motion before the trial resumed.",
            "The attorney {} called the verdict a victory for civil liberties.",
        ],
        Drug => &[
            "Doctors reported a sharp rise in the use of {} among young adults.",
            "Federal agents seized a large shipment of {} at the port.",
            "The clinic began offering {} to patients enrolled in the trial.",
            "Health officials warned that {} was being sold on street corners.",
            "A study found that {} reduced symptoms in most patients.",
        ],
        Politician => &[
            "{} told supporters at a rally that change was coming.",
            "Aides to {} said a new plan would be announced next week.",
            "{} criticized the administration's handling of the economy.",
            "At the debate, {} drew sharp contrasts with rivals for the nomination.",
            "{} raised more money than expected in the last quarter.",
        ],
        Leader => &[
            "{} addressed a crowd of supporters after the meeting.",
            "{} called for an end to apartheid and for new elections.",
            "Thousands gathered to hear {} speak on Sunday.",
            "{} met with government officials to discuss the transition.",
        ],
        Journalist => &[
            "The journalist {} wrote a long column about the scandal.",
            "{} reported from the scene for several days.",
            "In a broadcast interview, {} pressed officials for answers.",
            "Readers responded angrily to the latest piece by {}.",
        ],
        Golfer => &[
            "{} finished the round two strokes ahead of the field.",
            "On the final hole, {} sank a long putt for birdie.",
            "{} won the tournament with a closing round of 68.",
            "The gallery followed {} around the course all afternoon.",
        ],
        Tennis => &[
            "{} won the match in straight sets on the center court.",
            "{} saved three break points in the final set.",
            "The crowd cheered as {} served out the championship.",
            "{} struggled with the wind during the second set.",
        ],
        Laker => &[
            "{} scored 24 points in the summer game.",
            "The coach praised {} after practice on Thursday.",
            "{} signed a new contract with the team.",
            "{} worked on his jump shot during the offseason.",
        ],
        Basketball => &[
            "{} scored 33 points in the finals game.",
            "{} hit the winning shot with seconds left in the game.",
            "Fans chanted for {} during the fourth quarter.",
            "{} grabbed 15 rebounds as the series went on.",
        ],
        Company => &[
            "Shares of {} rose sharply in trading on Tuesday.",
            "{} reported quarterly earnings above analysts' expectations.",
            "The company {} announced plans to cut jobs.",
            "Analysts said {} would face stiff competition.",
        ],
        Place => &[
            "Officials in {} announced new measures on Monday.",
            "The delegation traveled to {} for talks.",
            "Residents of {} said they were worried about the cost.",
            "Traffic in {} was slowed by the storm.",
        ],
        Org => &[
            "A spokesman for the {} declined to comment.",
            "The {} issued a statement late on Friday.",
            "Officials at the {} said the review would take months.",
        ],
        Thing => &[
            "Farmers said the {} harvest was the largest in years.",
            "A portrait of {} hung in the hall.",
        ],
    }
}

pub(crate) fn titles(group: Group) -> &'static [&'static str] {
    match group {
        Lawyer => &[
            "{} Takes On a New Client",
            "{} Wins Reversal on Appeal",
            "Court Hears Arguments From {}",
        ],
        Drug => &[
            "Use of {} Rises in Cities",
            "New Rules for {}",
            "Study Questions Safety of {}",
        ],
        Politician => &[
            "{} Courts Voters in Iowa",
            "{} Outlines Economic Plan",
            "{} Faces Questions on Record",
        ],
        Leader => &[
            "{} Calls for Talks",
            "Crowds Greet {}",
            "{} Meets With Officials",
        ],
        Journalist => &[
            "{} on the Story Behind the Story",
            "A Conversation With {}",
            "{} Returns to the Field",
        ],
        Golfer => &[
            "{} Takes Lead at Augusta",
            "{} Shoots 66",
            "{} Wins in Playoff",
        ],
        Tennis => &[
            "{} Advances to Final",
            "{} Wins in Five Sets",
            "{} Upset in Early Round",
        ],
        Laker => &[
            "{} Impresses in Summer League",
            "Team Counts on {}",
            "{} Reaches Deal",
        ],
        Basketball => &[
            "{} Leads Way in Finals",
            "{} Scores 38",
            "{} and the Long Season",
        ],
        Company => &[
            "{} Shares Climb",
            "{} Plans Layoffs",
            "{} Unveils New Product",
        ],
        Place => &[
            "Life in {}",
            "{} Considers a New Name",
            "Visitors Return to {}",
        ],
        Org | Thing => &["Notes on {}"],
    }
}

/// A sentence naming the topic in plain words, without an entity.
pub(crate) fn topic_sentence(group: Group) -> &'static str {
    match group {
        Lawyer => "The lawyer has argued cases in New York for decades.",
        Drug => "The drug has been the subject of a federal inquiry.",
        Politician => "The politician has campaigned across the state for months.",
        Leader => "The end of apartheid dominated the talks.",
        Journalist => "The journalist has covered the story since it broke.",
        Golfer => "The golf tournament drew record crowds this year.",
        Tennis => "The tennis championship drew large crowds.",
        Laker => "The Lakers open training camp in the fall.",
        Basketball => "The basketball finals drew a record television audience.",
        Company => "The company said its shares were undervalued.",
        Place => "The city has changed its name more than once.",
        Org | Thing => "The report was released on Monday.",
    }
}

/// How an article refers to an entity without naming it.
pub(crate) fn description(group: Group) -> &'static str {
    match group {
        Lawyer => "a prominent defense lawyer",
        Drug => "a powerful prescription painkiller",
        Politician => "a senior senator from the Midwest",
        Leader => "the leader of the liberation movement",
        Journalist => "a veteran investigative reporter",
        Golfer => "the defending champion",
        Tennis => "the top seeded player",
        Laker => "the team's young forward",
        Basketball => "the league's most valuable player",
        Company => "a large computer maker",
        Place => "the former imperial capital on the river",
        Org | Thing => "the agency",
    }
}

pub(crate) const FILLER: &[&str] = &[
    "The {n} was expected to {v} later in the {p}.",
    "Critics said the {n} was {a}.",
    "Several people familiar with the {n} spoke on condition of anonymity.",
    "It was not immediately clear how the {n} would affect {g}.",
    "Supporters of the {n} said it would {v} the situation.",
    "A final decision on the {n} is not expected until next {p}.",
];

/// Off-topic sentences that still contain a baseline keyword.
pub(crate) const KEYWORD_NOISE: &[&str] = &[
    "A lawyer for the city said the case would be appealed.",
    "The pharmacy chain reported a drop in drug sales.",
    "The golf course will reopen in the spring.",
    "A tennis court was added to the park last year.",
    "The company that runs the ferry raised its fares.",
    "A reporter asked about the schedule.",
    "The election for the school board is next month.",
    "Shares of the utility were unchanged.",
    "A basketball league for children meets on Saturdays.",
];

pub(crate) const NOUNS: &[&str] = &[
    "plan",
    "budget",
    "report",
    "proposal",
    "measure",
    "program",
    "agreement",
    "schedule",
    "decision",
    "review",
];
pub(crate) const VERBS: &[&str] = &[
    "change",
    "delay",
    "expand",
    "improve",
    "complicate",
    "settle",
];
pub(crate) const PERIODS: &[&str] = &["week", "month", "year", "season", "quarter"];
pub(crate) const ADJECTIVES: &[&str] = &[
    "premature",
    "costly",
    "overdue",
    "unusual",
    "modest",
    "ambitious",
];
pub(crate) const AUDIENCES: &[&str] = &["residents", "investors", "voters", "workers", "students"];
pub(crate) const BACKGROUND_TITLES: &[&str] = &[
    "City Council Weighs New Budget",
    "Storm Expected This Weekend",
    "Schools Announce New Schedule",
    "Transit Fares May Rise",
    "Museum Opens New Wing",
    "A New Production Opens",
    "Market Report",
    "Letters to the Editor",
    "Weather Outlook",
    "Real Estate Notes",
];

/// How an information need selects documents in SPARQL.
#[derive(Clone, Copy, Debug)]
pub(crate) enum Target {
    /// Graph pattern over `?e` evaluated at the knowledge base.
    Class(&'static str),
    /// A single entity.
    Entity(&'static str),
    /// Politicians mentioned together with Barack Obama.
    WithObama,
}

pub(crate) struct NeedSpec {
    pub id: u32,
    pub description: &'static str,
    pub keywords: &'static str,
    pub from: &'static str,
    pub to: &'static str,
    pub group: Group,
    pub pool: &'static [&'static str],
    pub target: Target,
}

const fn need(
    id: u32,
    description: &'static str,
    keywords: &'static str,
    (from, to): (&'static str, &'static str),
    group: Group,
    pool: &'static [&'static str],
    target: Target,
) -> NeedSpec {
    NeedSpec {
        id,
        description,
        keywords,
        from,
        to,
        group,
        pool,
        target,
    }
}

const BROOKLYN_LAWYERS: Target =
    Target::Class("?e dc:subject dbc:New_York_lawyers ;\n     dbo:birthPlace dbr:Brooklyn");
const NY_LAWYERS: Target = Target::Class("?e dc:subject dbc:New_York_lawyers");
const DRUGS: Target = Target::Class("?e a dbo:Drug");
const POLITICIANS: Target = Target::Class("?e a dbo:Politician");
const JOURNALISTS: Target = Target::Class("?e a yago:Journalist110224578");
const GOLFERS: Target = Target::Class("?e a dbo:GolfPlayer");
const TENNIS: Target = Target::Class("?e a dbo:TennisPlayer");
const LAKERS: Target = Target::Class("?e dc:subject dbc:Los_Angeles_Lakers_players");
const BASKETBALL: Target = Target::Class("?e a dbo:BasketballPlayer");
const COMPANIES: Target = Target::Class("?e a dbo:Company");

pub(crate) const NEEDS: &[NeedSpec] = &[
    need(
        1,
        "New York lawyers born in Brooklyn, June 1989",
        "lawyer brooklyn",
        ("1989-06-01", "1989-06-30"),
        Lawyer,
        &["Alan_Dershowitz", "Ruth_Bader_Ginsburg", "Bruce_Cutler"],
        BROOKLYN_LAWYERS,
    ),
    need(
        2,
        "Drugs in the news, 1987",
        "drug drugs",
        ("1987-01-01", "1987-12-31"),
        Drug,
        &[
            "Cocaine",
            "Crack_cocaine",
            "Heroin",
            "Zidovudine",
            "Methadone",
        ],
        DRUGS,
    ),
    need(
        3,
        "Drugs in the news, 1997",
        "drug drugs",
        ("1997-01-01", "1997-12-31"),
        Drug,
        &["Fluoxetine", "Heroin", "Cocaine", "Methadone", "Aspirin"],
        DRUGS,
    ),
    need(
        4,
        "Politicians discussed with Barack Obama, summer 2007",
        "obama politicians",
        ("2007-06-01", "2007-08-30"),
        Politician,
        &[
            "Hillary_Clinton",
            "John_McCain",
            "John_Edwards",
            "Mitt_Romney",
            "Joe_Biden",
            "Bill_Richardson",
        ],
        Target::WithObama,
    ),
    need(
        5,
        "Politicians during the 1992 election",
        "election candidate",
        ("1992-09-01", "1992-11-30"),
        Politician,
        &["Bill_Clinton", "George_H._W._Bush", "Ross_Perot", "Al_Gore"],
        POLITICIANS,
    ),
    need(
        6,
        "Journalists, 1995",
        "journalist reporter",
        ("1995-01-01", "1995-12-31"),
        Journalist,
        &["Bob_Woodward", "Christiane_Amanpour", "Thomas_Friedman"],
        JOURNALISTS,
    ),
    need(
        7,
        "Journalists, 2003",
        "journalist reporter",
        ("2003-01-01", "2003-12-31"),
        Journalist,
        &[
            "Christiane_Amanpour",
            "Chris_Hedges",
            "Matt_Taibbi",
            "Thomas_Friedman",
            "Amy_Goodman",
        ],
        JOURNALISTS,
    ),
    need(
        8,
        "Golf players, April 1995",
        "golf masters",
        ("1995-04-01", "1995-04-30"),
        Golfer,
        &[
            "Ben_Crenshaw",
            "Greg_Norman",
            "Nick_Faldo",
            "Davis_Love_III",
            "Ernie_Els",
        ],
        GOLFERS,
    ),
    need(
        9,
        "Golf players, summer 2000",
        "golf",
        ("2000-06-01", "2000-08-31"),
        Golfer,
        &[
            "Tiger_Woods",
            "Phil_Mickelson",
            "Ernie_Els",
            "Jack_Nicklaus",
        ],
        GOLFERS,
    ),
    need(
        10,
        "Tennis players, July 2001",
        "tennis wimbledon",
        ("2001-07-01", "2001-07-31"),
        Tennis,
        &[
            "Roger_Federer",
            "Pete_Sampras",
            "Lleyton_Hewitt",
            "Andre_Agassi",
            "Venus_Williams",
        ],
        TENNIS,
    ),
    need(
        11,
        "Tennis players, summer 1992",
        "tennis",
        ("1992-06-01", "1992-07-31"),
        Tennis,
        &[
            "Andre_Agassi",
            "Steffi_Graf",
            "Monica_Seles",
            "Jim_Courier",
            "Pete_Sampras",
        ],
        TENNIS,
    ),
    need(
        12,
        "Los Angeles Lakers players, summer 2016",
        "lakers",
        ("2016-06-01", "2016-08-31"),
        Laker,
        &[
            "Julius_Randle",
            "Jordan_Clarkson",
            "Luol_Deng",
            "Timofey_Mozgov",
            "Lou_Williams",
            "Kobe_Bryant",
        ],
        LAKERS,
    ),
    need(
        13,
        "Los Angeles Lakers players, spring 2001",
        "lakers",
        ("2001-05-01", "2001-06-30"),
        Laker,
        &["Kobe_Bryant", "Derek_Fisher", "Robert_Horry", "Rick_Fox"],
        LAKERS,
    ),
    need(
        14,
        "Companies, 1999",
        "company shares",
        ("1999-01-01", "1999-12-31"),
        Company,
        &["IBM", "Microsoft", "Intel", "Enron", "Apple_Inc."],
        COMPANIES,
    ),
    need(
        15,
        "Companies, 1985",
        "company shares",
        ("1985-01-01", "1985-12-31"),
        Company,
        &[
            "IBM",
            "General_Motors",
            "Chrysler",
            "ExxonMobil",
            "Apple_Inc.",
            "The_Coca-Cola_Company",
        ],
        COMPANIES,
    ),
    need(
        16,
        "Nelson Mandela, 1990",
        "mandela apartheid",
        ("1990-01-01", "1990-12-31"),
        Leader,
        &["Nelson_Mandela"],
        Target::Entity("Nelson_Mandela"),
    ),
    need(
        17,
        "Drugs in the news, 2005",
        "drug drugs",
        ("2005-01-01", "2005-12-31"),
        Drug,
        &["Oxycodone", "Sildenafil", "Methadone", "Cocaine"],
        DRUGS,
    ),
    need(
        18,
        "New York lawyers, 1995",
        "lawyer attorney",
        ("1995-01-01", "1995-12-31"),
        Lawyer,
        &[
            "William_Kunstler",
            "Robert_Morgenthau",
            "Alan_Dershowitz",
            "Louis_Nizer",
        ],
        NY_LAWYERS,
    ),
    need(
        19,
        "Basketball players, June 1998",
        "basketball finals",
        ("1998-06-01", "1998-06-30"),
        Basketball,
        &[
            "Michael_Jordan",
            "Scottie_Pippen",
            "Karl_Malone",
            "John_Stockton",
            "Dennis_Rodman",
        ],
        BASKETBALL,
    ),
    need(
        20,
        "Saint Petersburg, 1991",
        "leningrad petersburg",
        ("1991-01-01", "1991-12-31"),
        Place,
        &["Saint_Petersburg"],
        Target::Entity("Saint_Petersburg"),
    ),
];

/// Id of the golf article used by the similar-documents query.
pub const GOLF_ARTICLE_ID: &str = "9504E4D71530F932A35755C0A9619C8B63";

pub(crate) const OCCUPY_HOSTS: &[&str] = &[
    "occupywallst.org",
    "occupytogether.org",
    "occupyoakland.org",
    "nycga.net",
    "occupyboston.org",
    "occupylondon.org.uk",
    "interoccupy.net",
    "occupywallstreet.net",
    "occupyla.org",
    "occupychicago.org",
];

pub(crate) const OCCUPY_SECTIONS: &[&str] =
    &["news", "blog", "updates", "events", "forum", "media"];

pub(crate) const OCCUPY_TOPICS: &[&str] = &[
    "General Assembly Minutes",
    "March on Wall Street",
    "Eviction Update",
    "Teach-In Schedule",
    "Solidarity Statement",
    "Press Roundup",
    "Occupy the Banks",
    "Winter Camp Report",
    "Media Coverage",
    "Call to Action",
];

/// Journalists and how often occupy pages mention them, relative weight.
pub(crate) const OCCUPY_JOURNALISTS: &[(&str, u32)] = &[
    ("Ralph_Nader", 6),
    ("Chris_Hedges", 5),
    ("Dylan_Ratigan", 4),
    ("Amy_Goodman", 3),
    ("Matt_Taibbi", 3),
    ("Christiane_Amanpour", 1),
    ("Thomas_Friedman", 1),
];

pub(crate) const OCCUPY_OTHERS: &[&str] = &[
    "Michael_Bloomberg",
    "Barack_Obama",
    "Zuccotti_Park",
    "Wall_Street",
    "New_York_City",
    "Oakland,_California",
    "New_York_City_Police_Department",
    "Goldman_Sachs",
    "Boston",
    "London",
    "Federal_Reserve_System",
    "United_States_Congress",
];

pub(crate) const OCCUPY_PERSON: &[&str] = &[
    "{} spoke to the crowd about economic inequality.",
    "{} joined the march and called for accountability.",
    "A statement from {} criticized the eviction of the camp.",
    "{} wrote that the movement had changed the national conversation.",
    "Organizers thanked {} for covering the occupation.",
];

pub(crate) const OCCUPY_PLACE: &[&str] = &[
    "Protesters gathered in {} as the assembly voted on new proposals.",
    "Police cleared the encampment near {} before dawn.",
    "The working group met in {} to plan the next action.",
];

pub(crate) const OCCUPY_ORG: &[&str] = &[
    "Marchers stopped outside {} offices to read a statement.",
    "Officers from the {} made several arrests.",
    "Speakers blamed {} for the crisis.",
];

pub(crate) const OCCUPY_FILLER: &[&str] = &[
    "The general assembly agreed to meet again on Saturday.",
    "Volunteers distributed food and blankets to campers.",
    "Donations are still needed for the kitchen and library.",
    "The facilitation committee posted minutes from the meeting.",
    "Legal observers will be present at all actions.",
];

pub(crate) const TWEET_OBAMA: &[&str] = &[
    "Great speech by {} tonight #politics",
    "{} just signed the bill, big day",
    "Watching {} at the press conference",
    "Can't believe {} said that lol",
    "{} at the state dinner tonight",
];

pub(crate) const TWEET_LAKERS: &[&str] = &[
    "{} looked great in summer league #LakeShow",
    "{} is the future of this team",
    "Trade rumors about {} again",
    "{} with the dunk!!! #LakeShow",
];

pub(crate) const TWEET_PLACES: &[&str] = &[
    "Los_Angeles",
    "Chicago",
    "New_York_City",
    "Boston",
    "London",
];

pub(crate) const TWEET_CHATTER: &[&str] = &[
    "Traffic in {} is terrible this morning",
    "Beautiful day in {}",
    "Anyone going to the game tonight?",
    "Coffee first, then work",
    "New episode tonight!!",
];

pub(crate) const SCREEN_NAMES: &[&str] = &[
    "hoopsfan88",
    "purplegold24",
    "dailypolitics",
    "nyc_watcher",
    "sportsdesk",
    "mariag",
    "jt_reports",
    "citybeat",
    "newsjunkie",
    "westcoastjay",
];
